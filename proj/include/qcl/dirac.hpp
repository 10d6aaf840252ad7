#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qcl/clifford.hpp"

namespace qcl {

// Σ c · (monomial of S_q(u_+), ordered) ⊗ (y_J of Λ_q(u_−)); the first factor
// multiplies in the opposite algebra
struct koszul_element {
    std::map<std::pair<monomial, subset>, scalar> terms;
    bool operator==(const koszul_element& o) const { return terms == o.terms; }
    void add(const monomial& m, const subset& y, const scalar& c);
};

// ð = Σ_i x_i ⊗ y_i over dual bases
koszul_element koszul_boundary(const cominuscule_context& c);
// the same element written through x′ = P·x and y′ = P^{-T}·y, then expanded back
koszul_element koszul_boundary(const cominuscule_context& c, const mat& P);

struct eth_square_certificate {
    size_t products = 0;   // pairs of terms multiplied
    size_t target_dim = 0; // dim S²_q(u_+) · dim Λ²_q(u_−)
    bool zero = false;
};
// reduces ð·ð in S_q(u_+)^op ⊗ Λ_q(u_−); NonzeroSquare otherwise
eth_square_certificate verify_eth_squared_zero(const cominuscule_context& c, const koszul_element& eth);

// ð on W ⊗ Λ_q(u_+) through κ(x_i) = S^{-1}(E_{ξ_i}) and γ_−
struct dirac_matrix {
    weight_module w;
    size_t dim = 0;
    mat kappa_gram;   // invariant form on W
    mat clifford_gram;
    mat gram;         // kron of the two
    mat eth, eth_star, dirac;
};
dirac_matrix dirac_element(const cominuscule_context& c, const clifford_data& d, const weight_module& w,
                           const star_params& p);

struct dirac_square_report {
    bool eth_sq_zero = false, eth_star_sq_zero = false, identity = false;
    bool ok() const { return eth_sq_zero && eth_star_sq_zero && identity; }
};
// D² = ðð* + ð*ð, exactly; IdentityFails otherwise
dirac_square_report verify_dirac_square(const dirac_matrix& m);

struct spectrum_report {
    std::vector<double> eigenvalues;  // of D², ascending
    double asymmetry = 0;             // of D in a Gram-orthonormal frame
    bool positive_gram = false;
};
spectrum_report dirac_spectrum(const dirac_matrix& m, const scalar_context& ctx, double q0);

}  // namespace qcl
