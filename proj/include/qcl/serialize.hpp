#pragma once

#include "json.hpp"
#include <string>

#include "qcl/clifford.hpp"

namespace qcl {

using json = nlohmann::json;  // std::map-backed, so keys come out sorted

json to_json(const scalar& x);
scalar scalar_from_json(const json& j);
json to_json(const mat& m);
mat mat_from_json(const json& j);

json to_json(const root_system& rs);
json to_json(const parabolic& p);

json to_json(const element& x);
element element_from_json(const json& j);

json to_json(const weight_module& m);
weight_module module_from_json(const json& j, rs_ptr rs);

json to_json(const cominuscule_context& c);
// rebuilds the root system and parabolic, reads the rest; the caller audits
cominuscule_context context_from_json(const json& j);

// 64-bit FNV-1a of the compact dump, as 16 hex digits
std::string content_hash(const json& j);

}  // namespace qcl
