#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qcl/matrix.hpp"
#include "qcl/roots.hpp"
#include "qcl/uq.hpp"

namespace qcl {

// Finite-dimensional Type-1 module. The algebra is U_q(g) when every node is
// active, or the Levi U_q(l) when some nodes are switched off; K_λ is always
// available for all λ ∈ P and acts diagonally through the weights.
class weight_module {
public:
    weight_module() = default;
    weight_module(rs_ptr rs, std::vector<weight> wts, std::vector<bool> active);

    rs_ptr rs;
    scalar_context ctx;
    std::vector<bool> active;
    std::vector<weight> wts;
    std::vector<mat> E, F;  // one per node; inactive nodes hold zero matrices
    std::string label;
    std::optional<weight> highest;  // set for simple modules

    size_t dim() const { return wts.size(); }
    int rank() const { return rs->rank(); }
    mat K(const weight& lam) const;
    mat gen_matrix(const gen& g) const;
    mat act(const element& x) const;
    vec act(const element& x, const vec& v) const;

    std::map<weight, std::vector<size_t>> weight_spaces() const;
    bool same_algebra(const weight_module& o) const;
    void check_compatible(const weight_module& o) const;

private:
    void apply_gen(const gen& g, vec& v) const;
};

weight_module trivial_module(rs_ptr rs, std::vector<bool> active = {});
weight_module seed_module(rs_ptr rs);
weight_module tensor(const weight_module& a, const weight_module& b);
weight_module tensor_power(const weight_module& a, int n);
weight_module direct_sum(const weight_module& a, const weight_module& b);
weight_module dual(const weight_module& m);        // (a·f)(v) = f(S(a)v)
weight_module right_dual(const weight_module& m);  // (a·f)(v) = f(S^{-1}(a)v)
// restriction to the index subset (must be stable under the active generators)
weight_module restrict_to(const weight_module& m, const std::vector<size_t>& idx);
// switch off generators: the same space as a module over a Levi subalgebra
weight_module restrict_algebra(const weight_module& m, std::vector<bool> active);

struct submodule {
    weight_module mod;
    mat embedding;  // columns = basis of the submodule in the ambient coordinates
};

// F-word breadth-first closure of the given weight vectors
submodule cyclic_submodule(const weight_module& m, const std::vector<vec>& gens);

weight_module simple_module(rs_ptr rs, const weight& lambda);

// all defining relations as exact matrix identities; returns failing relation names
std::vector<std::string> relation_audit(const weight_module& m);

mat highest_weight_vectors(const weight_module& m, const weight& lambda);

// Grothendieck-ring element: dominant weight -> multiplicity
struct groth {
    std::map<weight, long> m;
    groth operator+(const groth& o) const;
    groth operator-(const groth& o) const;
    bool operator==(const groth& o) const;
    long dim(const root_system& rs, const std::vector<bool>& active) const;
    std::string str() const;
};

bool is_dominant_for(const weight& w, const std::vector<bool>& active);
long weyl_dimension(const root_system& rs, const weight& lambda, const std::vector<bool>& active);
// (λ, λ + 2ρ) for the active subalgebra
rat casimir_value(const root_system& rs, const weight& lambda, const std::vector<bool>& active);

groth decompose(const weight_module& m);
groth decompose_subspace(const weight_module& m, const mat& basis);

struct isotypic_part {
    weight lambda;
    long multiplicity;
    mat basis;  // columns in the module's coordinates
};
std::vector<isotypic_part> isotypic_decomposition(const weight_module& m);

// bilinear P with ⟨y, x⟩ = y^T P x, a module map Mneg ⊗ Mpos → trivial
mat invariant_pairing(const weight_module& mneg, const weight_module& mpos);
// basis of symmetric Gram matrices G with (a v, w) = (v, a* w)
std::vector<mat> invariant_forms(const weight_module& m);
// for simple m: the unique invariant form with G(0,0) = scale
mat invariant_inner_product(const weight_module& m, const scalar& scale = scalar(1));

// numeric positivity at sample q values (Cholesky on the specialized Gram)
bool positive_definite_at(const mat& g, const scalar_context& ctx, double q0);

// equality of two algebra elements on a family of probe modules
bool probe_equal(const std::vector<weight_module>& probes, const element& a, const element& b);
// fundamental reachable modules of the active algebra and their pairwise tensors
std::vector<weight_module> probe_family(rs_ptr rs, bool with_tensors = true);

// x ∈ U^± of root-lattice degree coeffs, rewritten as a combination of E-words
// (kind E) or F-words (kind F) that are independent on the probes
element probe_normal_form(const std::vector<weight_module>& probes, const element& x,
                          const std::vector<int>& coeffs, gen::kind_t kind);
// E_{β_k} or F_{β_k} for a reduced word, normalized after every braid step
std::vector<element> probe_root_vectors(const std::vector<weight_module>& probes, const std::vector<int>& word,
                                        gen::kind_t kind);

std::string mat_render(const mat& m, const scalar_context& ctx);

}  // namespace qcl
