#pragma once

#include <map>
#include <string>
#include <vector>

#include "qcl/braiding.hpp"

namespace qcl {

// ±1 eigenspaces of σ_VV, as column bases in V ⊗ V
mat sym_square(const weight_module& v);
mat ext_square(const weight_module& v);
// S^n_q V resp. Λ^n_q V inside V^{⊗n}: tensors fixed (resp. negated) by every adjacent σ
mat symmetric_tensors(const weight_module& v, int n);
mat antisymmetric_tensors(const weight_module& v, int n);

// hard cap on dim V^{⊗n} for any degree-n computation
constexpr size_t max_tensor_dim = 20000;

enum class qa_kind { symmetric, exterior, general };

// T(V)/⟨R⟩ with R ⊆ V ⊗ V given by basis columns
struct quadratic_algebra {
    weight_module v;
    mat relations;
    qa_kind kind = qa_kind::general;
};

quadratic_algebra quantum_symmetric_algebra(const weight_module& v);  // R = Λ²_q V
quadratic_algebra quantum_exterior_algebra(const weight_module& v);   // R = S²_q V
// A^! on V* with R° under ⟨f ⊗ g, u ⊗ v⟩ = g(u) f(v)
quadratic_algebra quadratic_dual(const quadratic_algebra& a);

// J_n = Σ_j V^{⊗(j-1)} ⊗ R ⊗ V^{⊗(n-j-1)}, as a column basis
mat ideal_component(const quadratic_algebra& a, int n);
bool in_ideal(const quadratic_algebra& a, int n, const vec& x);
long graded_dimension(const quadratic_algebra& a, int n);
std::vector<long> hilbert_series(const quadratic_algebra& a, int d);  // h_0 … h_d
long classical_dimension(qa_kind k, long dim_v, int n);

struct flatness_report {
    bool flat = true;
    int witness_degree = -1;  // first degree with h_n below the classical value
    bool pbw_certified = false;
    std::vector<long> quantum, classical;
};
flatness_report is_flat(const quadratic_algebra& a, int d);

// ordered monomials: i ≤ j (symmetric/general) or i < j (exterior)
bool is_ordered_pair(qa_kind k, size_t i, size_t j);

// every disordered v_i v_j written as a combination of ordered ones mod R
struct rewrite_table {
    size_t dim = 0;
    qa_kind kind = qa_kind::general;
    std::map<std::pair<size_t, size_t>, std::map<std::pair<size_t, size_t>, scalar>> rules;
};
rewrite_table rewrite_to_ordered(const quadratic_algebra& a);
std::string render_rule(const rewrite_table& t, const std::pair<size_t, size_t>& lhs,
                        const std::vector<std::string>& names, const scalar_context& ctx);

// monomials as index tuples; full reduction to ordered monomials
using monomial = std::vector<size_t>;
using polynomial = std::map<monomial, scalar>;
polynomial reduce_to_ordered(const rewrite_table& t, const monomial& m);
// for each doubly disordered triple, the difference of its two reductions (nonzero only)
std::vector<std::pair<monomial, polynomial>> overlap_relations(const rewrite_table& t);
// one signed summand "c*mono" of a rendered sum
std::string term_str(const scalar& c, const std::string& mono, const scalar_context& ctx, bool first);
std::string render_polynomial(const polynomial& p, const std::vector<std::string>& names,
                              const scalar_context& ctx);

// classical character of S^n V or Λ^n V, decomposed into simples
groth classical_power_class(const weight_module& v, int n, bool symmetric);
// character (weight -> multiplicity) decomposed by peeling off highest weights
groth decompose_character(rs_ptr rs, std::map<weight, long> ch);

struct collapse_report {
    groth sym_q, ext_q, sym_cl, ext_cl;
    long dim_sym_q = 0, dim_ext_q = 0;
    bool equal = false;  // [S³_q] − [Λ³_q] = [S³] − [Λ³]
};
collapse_report collapse_deficit_degree3(const weight_module& v);

}  // namespace qcl
