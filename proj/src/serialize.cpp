#include "qcl/serialize.hpp"

#include <cstdio>

#include "qcl/errors.hpp"

namespace qcl {

namespace {

std::vector<int> one_based(const std::vector<int>& w) {
    std::vector<int> out(w);
    for (int& i : out) ++i;
    return out;
}

json rat_coords(const root_system& rs, const weight& w) {
    json a = json::array();
    for (const rat& r : rs.root_coords(w)) a.push_back(r.get_str());
    return a;
}

}  // namespace

json to_json(const scalar& x) { return x.str(); }

scalar scalar_from_json(const json& j) {
    if (!j.is_string()) fail("ParseError", "scalar must be a string");
    return parse_scalar(j.get<std::string>());
}

json to_json(const mat& m) {
    json rows = json::array();
    for (size_t i = 0; i < m.rows(); ++i) {
        json r = json::array();
        for (size_t k = 0; k < m.cols(); ++k) r.push_back(m(i, k).str());
        rows.push_back(std::move(r));
    }
    return rows;
}

mat mat_from_json(const json& j) {
    if (!j.is_array()) fail("ParseError", "matrix must be an array of rows");
    const size_t r = j.size(), c = r ? j[0].size() : 0;
    mat m(r, c);
    for (size_t i = 0; i < r; ++i) {
        if (j[i].size() != c) fail("ParseError", "ragged matrix");
        for (size_t k = 0; k < c; ++k) m(i, k) = scalar_from_json(j[i][k]);
    }
    return m;
}

json to_json(const root_system& rs) {
    json j;
    j["type"] = std::string(1, rs.type());
    j["rank"] = rs.rank();
    json cartan = json::array();
    for (int i = 0; i < rs.rank(); ++i) {
        json row = json::array();
        for (int k = 0; k < rs.rank(); ++k) row.push_back(rs.cartan(i, k));
        cartan.push_back(row);
    }
    j["cartan"] = cartan;
    json d = json::array();
    for (int i = 0; i < rs.rank(); ++i) d.push_back(rs.d(i));
    j["symmetrizer"] = d;
    json roots = json::array();
    for (const auto& r : rs.positive_roots()) roots.push_back(r.coeffs);
    j["positive_roots"] = roots;
    j["highest_root"] = rs.highest_root().coeffs;
    j["cominuscule_nodes"] = one_based(cominuscule_nodes(rs));
    return j;
}

json to_json(const parabolic& p) {
    json j;
    j["node"] = p.s + 1;
    j["N"] = p.N();
    j["cominuscule"] = p.cominuscule;
    j["levi_word"] = one_based(p.levi_word);
    j["parabolic_word"] = one_based(p.parabolic_word);
    json xi = json::array();
    for (const auto& w : p.xi) xi.push_back(rat_coords(*p.rs, w));
    j["radical_roots"] = xi;
    return j;
}

json to_json(const element& x) {
    json terms = json::array();
    for (const auto& [w, c] : x.terms()) {
        json letters = json::array();
        for (const auto& g : w) {
            json l;
            l["kind"] = std::string(1, static_cast<char>(g.kind));
            if (g.kind == gen::K)
                l["weight"] = g.lam;
            else
                l["node"] = g.idx + 1;
            letters.push_back(l);
        }
        terms.push_back({{"word", letters}, {"coeff", c.str()}});
    }
    return terms;
}

element element_from_json(const json& j) {
    element x;
    for (const auto& t : j) {
        word w;
        for (const auto& l : t.at("word")) {
            const std::string k = l.at("kind").get<std::string>();
            if (k == "K")
                w.push_back(gen::k(l.at("weight").get<weight>()));
            else if (k == "E" || k == "F")
                w.push_back(k == "E" ? gen::e(l.at("node").get<int>() - 1) : gen::f(l.at("node").get<int>() - 1));
            else
                fail("ParseError", "unknown generator kind " + k);
        }
        x.add_term(std::move(w), scalar_from_json(t.at("coeff")));
    }
    return x;
}

json to_json(const weight_module& m) {
    json j;
    j["label"] = m.label;
    j["dim"] = m.dim();
    j["D"] = m.ctx.D;
    j["active"] = m.active;
    j["weights"] = m.wts;
    if (m.highest) j["highest"] = *m.highest;
    json e = json::array(), f = json::array();
    for (int i = 0; i < m.rank(); ++i) {
        e.push_back(to_json(m.E[i]));
        f.push_back(to_json(m.F[i]));
    }
    j["E"] = e;
    j["F"] = f;
    return j;
}

weight_module module_from_json(const json& j, rs_ptr rs) {
    if (j.at("D").get<int>() != rs->root_degree()) fail("ParseError", "module stored with a different D");
    weight_module m(rs, j.at("weights").get<std::vector<weight>>(), j.at("active").get<std::vector<bool>>());
    m.label = j.at("label").get<std::string>();
    if (j.contains("highest")) m.highest = j.at("highest").get<weight>();
    if (j.at("E").size() != static_cast<size_t>(rs->rank()) || j.at("F").size() != static_cast<size_t>(rs->rank()))
        fail("ParseError", "one E and one F matrix per node");
    for (int i = 0; i < rs->rank(); ++i) {
        m.E[i] = mat_from_json(j.at("E")[i]);
        m.F[i] = mat_from_json(j.at("F")[i]);
        if (m.E[i].rows() != m.dim() || m.E[i].cols() != m.dim() || m.F[i].rows() != m.dim() ||
            m.F[i].cols() != m.dim())
            fail("ParseError", "generator matrix has the wrong size");
    }
    return m;
}

json to_json(const cominuscule_context& c) {
    json j;
    j["root_system"] = to_json(*c.rs);
    j["parabolic"] = to_json(c.par);
    j["D"] = c.ctx.D;
    json ex = json::array();
    for (const auto& e : c.e_xi) ex.push_back(to_json(e));
    j["e_xi"] = ex;
    j["u_plus"] = to_json(c.u_plus);
    j["u_minus"] = to_json(c.u_minus);
    j["u_minus_abstract"] = to_json(c.u_minus_abstract);
    json r = json::array();
    for (const auto& x : c.rescale) r.push_back(x.str());
    j["rescale"] = r;
    return j;
}

cominuscule_context context_from_json(const json& j) {
    cominuscule_context c;
    const auto& rj = j.at("root_system");
    c.rs = build_root_system(rj.at("type").get<std::string>().at(0), rj.at("rank").get<int>());
    const int s = j.at("parabolic").at("node").get<int>() - 1;
    c.par = build_parabolic(c.rs, s, true);
    c.ctx = c.rs->context();
    if (j.at("D").get<int>() != c.ctx.D) fail("ParseError", "context stored with a different D");
    c.levi.assign(c.rs->rank(), true);
    c.levi[s] = false;
    for (const auto& e : j.at("e_xi")) c.e_xi.push_back(element_from_json(e));
    c.u_plus = module_from_json(j.at("u_plus"), c.rs);
    c.u_minus = module_from_json(j.at("u_minus"), c.rs);
    c.u_minus_abstract = module_from_json(j.at("u_minus_abstract"), c.rs);
    for (const auto& x : j.at("rescale")) c.rescale.push_back(scalar_from_json(x));
    return c;
}

std::string content_hash(const json& j) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : j.dump()) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace qcl
