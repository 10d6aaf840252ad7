#pragma once

#include <map>
#include <vector>

#include "qcl/module.hpp"

namespace qcl {

// reduced word for the longest element of the module's (active) algebra
std::vector<int> active_longest_word(const weight_module& m);

// τ : U ⊗ V → V ⊗ U
mat flip(size_t du, size_t dv);

// R̂_UV : U ⊗ V → V ⊗ U
mat braiding(const weight_module& U, const weight_module& V);

struct double_braiding_entry {
    weight mu;
    rat exponent;  // e_μ
    scalar value;  // ν^{e_μ}
};
// eigenvalues of R̂_VU R̂_UV on the constituents of U ⊗ V, for U, V simple
std::vector<double_braiding_entry> double_braiding_eigendata(const weight_module& U,
                                                             const weight_module& V);

// spectral projectors onto the isotypic components
struct isotypic_projectors {
    std::vector<weight> lambdas;
    std::vector<mat> proj;
};
isotypic_projectors projectors(const weight_module& m);

// σ_UV = R̂_UV · A, with A scalar on each (λ, λ′, μ) component
mat commutor(const weight_module& U, const weight_module& V);
// the same, with A as a polynomial in the double braiding (U, V simple)
mat commutor_lagrange(const weight_module& U, const weight_module& V);

// s_{p,t} acting on V^{⊗n}; p, t are 1-based slots
class cactus_action {
public:
    cactus_action(weight_module v, int n);
    int n() const { return n_; }
    const mat& generator(int p, int t);

private:
    const weight_module& power(int k);
    const mat& sigma_block(int k);  // σ_{V, V^{⊗k}}

    weight_module v_;
    int n_;
    std::map<int, weight_module> powers_;
    std::map<int, mat> sigma_;
    std::map<std::pair<int, int>, mat> gens_;
};

mat cactus_generator(const weight_module& v, int n, int p, int t);

}  // namespace qcl
