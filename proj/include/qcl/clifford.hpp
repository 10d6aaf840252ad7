#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qcl/quadratic.hpp"

namespace qcl {

// Everything attached to a cominuscule pair (g, s). Node s is 0-based.
// The x_k are ordered like ξ_1 … ξ_N and x_k ↦ E_{ξ_k} is an exact intertwiner
// for the adjoint action; the y_k are the dual basis, ⟨y_i, x_j⟩ = δ_ij.
struct cominuscule_context {
    rs_ptr rs;
    parabolic par;
    std::vector<bool> levi;
    scalar_context ctx;
    std::vector<element> e_xi;  // E_{ξ_k}
    weight_module u_plus, u_minus;
    // u_− as found inside the adjoint module, before rescaling
    weight_module u_minus_abstract;
    std::vector<scalar> rescale;  // x_k = rescale[k] · (basis vector of *(u_−abstract))

    int s() const { return par.s; }
    int N() const { return par.N(); }
    std::string label() const;
};

cominuscule_context build_context(rs_ptr rs, int s);
cominuscule_context build_context(char type, int rank, int s);
// the checks build_context makes, rerun on a stored context; names of failures
std::vector<std::string> context_audit(const cominuscule_context& c);

// E_{ξ_l}E_{ξ_k} − ν^{−(ξ_k,ξ_l)}E_{ξ_k}E_{ξ_l} = Σ_{k<i≤j<l} c^{ij}_{kl} E_{ξ_i}E_{ξ_j}
struct schubert_relation {
    size_t k = 0, l = 0;
    rat exponent;  // −(ξ_k, ξ_l)
    std::map<std::pair<size_t, size_t>, scalar> coeffs;
};
std::vector<schubert_relation> verify_schubert_quadratic(const cominuscule_context& c);

// coefficients of target in the span of basis, decided on probe modules;
// ProbeMismatch when target is outside, ProbeUnderdetermined when not unique
vec probe_solve(const std::vector<weight_module>& probes, const element& target,
                const std::vector<element>& basis);

using subset = std::vector<size_t>;  // increasing indices

struct exterior_algebra_rep {
    bool plus = true;
    size_t N = 0;
    std::vector<subset> basis;        // all subsets, by degree then lexicographic
    std::map<subset, size_t> index;
    std::vector<mat> left;            // left multiplication by basis element a
    rewrite_table rules;
    weight_module v;

    size_t dim() const { return basis.size(); }
    size_t degree(size_t a) const { return basis[a].size(); }
    std::vector<size_t> in_degree(size_t k) const;
    vec multiply(const vec& a, const vec& b) const;
    std::vector<std::string> names() const;
    std::string element_str(const vec& a, const scalar_context& ctx) const;
};

exterior_algebra_rep exterior_algebra(const cominuscule_context& c, bool plus);
// coordinates in the x_J basis of the image of a degree-k tensor
mat pi_map(const exterior_algebra_rep& ext, int k);
// columns: tensor lifts of the x_J, J of size k, inside Λ^k_q u_±
mat alternating_lift(const exterior_algebra_rep& ext, int k);

struct clifford_data {
    exterior_algebra_rep ext_plus, ext_minus;
    mat pairing;                      // ⟨y_I, x_J⟩, rows y, cols x
    std::vector<mat> gamma_plus;      // γ_+(x_I) for every basis element
    std::vector<mat> gamma_minus;     // γ_−(y_I)
    std::vector<mat> rho_e, rho_f;    // U_q(l) generators on Λ_q(u_+)
};

clifford_data build_clifford(const cominuscule_context& c);
// block-diagonal pairing Λ_q(u_−) × Λ_q(u_+) → field
mat exterior_pairing(const cominuscule_context& c, const exterior_algebra_rep& plus,
                     const exterior_algebra_rep& minus);
mat creation(const clifford_data& d, const vec& x);
mat annihilation(const clifford_data& d, const vec& y);

// rank of y ⊗ x ↦ γ_−(y)γ_+(x), an operator space of dimension 4^N
struct factorization_report {
    size_t rank = 0, expected = 0;
    bool full = false;
};
factorization_report gamma_factorization(const clifford_data& d);

// the unique z_J with x_I z_J = δ_IJ x_[N] whenever deg x_I + deg z_J = N
std::vector<vec> frobenius_dual_basis(const exterior_algebra_rep& ext);

// Gram matrix on Λ_q(u_+): the tensor form on u_+^{⊗k} with (x_1, x_1) = base_scale,
// restricted to Λ^k_q u_+ and transported along π; degree_scale rescales whole degrees
struct star_params {
    scalar base_scale = scalar(1);
    std::map<int, scalar> degree_scale;
};
star_params star_preset(const cominuscule_context& c, const std::string& name);
mat clifford_gram(const cominuscule_context& c, const clifford_data& d, const star_params& p);
// T* = M^{-1} T^T M
mat adjoint_wrt(const mat& gram, const mat& t);

// γ_+(x_i)γ_−(y_j) = Σ coeff · γ_−(y_I)γ_+(x_K)
struct commutation_expansion {
    size_t i = 0, j = 0;
    std::map<std::pair<size_t, size_t>, scalar> coeffs;  // (I, K) basis indices
};
commutation_expansion commutation_relations(const clifford_data& d, size_t i, size_t j);
// all N² expansions with one solve, ordered by (i, j)
std::vector<commutation_expansion> all_commutation_relations(const clifford_data& d);
std::string render_expansion(const clifford_data& d, const commutation_expansion& e,
                             const scalar_context& ctx);
// T = Σ coeff · γ_−(y_I)γ_+(x_K); nullopt when T is outside the γ image
using gamma_coeffs = std::map<std::pair<size_t, size_t>, scalar>;
std::optional<gamma_coeffs> gamma_expansion(const clifford_data& d, const mat& t);
// largest deg I + deg K over the terms
size_t expansion_degree(const clifford_data& d, const gamma_coeffs& e);

// audits; each returns the names of failing checks
std::vector<std::string> module_algebra_audit(const cominuscule_context& c, const clifford_data& d);
std::vector<std::string> frobenius_ideal_audit(const exterior_algebra_rep& ext);
// T ↦ T* is an involution, reverses products of γ's, and matches the compact form
// on U_q(l): ρ(E_j)* = ρ(K_j F_j), ρ(F_j)* = ρ(E_j K_j^{-1})
std::vector<std::string> star_audit(const cominuscule_context& c, const clifford_data& d, const star_params& p);
std::vector<std::string> associativity_audit(const exterior_algebra_rep& ext, size_t samples, unsigned seed);

}  // namespace qcl
