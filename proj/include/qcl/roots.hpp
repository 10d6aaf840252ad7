#pragma once

#include <memory>
#include <string>
#include <vector>

#include "qcl/field.hpp"

namespace qcl {

// Integral weight in fundamental-weight coordinates.
using weight = std::vector<int>;

weight operator+(const weight& a, const weight& b);
weight operator-(const weight& a, const weight& b);
weight operator-(const weight& a);
weight operator*(int k, const weight& a);
std::string weight_str(const weight& w);

struct root {
    std::vector<int> coeffs;  // simple-root coordinates
    weight w;                 // fundamental-weight coordinates
    int height() const;
};

class root_system {
public:
    root_system(char type, int rank);

    char type() const { return type_; }
    int rank() const { return rank_; }
    std::string label() const { return std::string(1, type_) + std::to_string(rank_); }
    int cartan(int i, int j) const { return a_[i][j]; }
    int d(int i) const { return d_[i]; }

    const std::vector<root>& positive_roots() const { return pos_; }
    const root& highest_root() const { return pos_.back(); }
    weight simple_root(int i) const;     // α_i in ω-coordinates
    weight fundamental(int i) const;     // ω_i
    weight rho() const;                  // ρ = Σ ω_i
    bool is_dominant(const weight& w) const;

    rat form(const weight& a, const weight& b) const;
    std::vector<rat> root_coords(const weight& w) const;  // may be fractional
    // index of the root with these simple-root coordinates, or -1
    int find_positive_coeffs(const std::vector<int>& coeffs) const;
    int find_positive(const weight& w) const;

    weight reflect(int i, const weight& w) const;
    weight apply_word(const std::vector<int>& word, const weight& w) const;  // rightmost first

    // least D with (ω_i, ω_j) ∈ (1/D)Z for all i, j
    int root_degree() const;
    scalar_context context() const { return scalar_context{root_degree()}; }

    // Weyl dimension formula
    long weyl_dimension(const weight& lambda) const;

    // scalar q^{(λ,μ)}
    scalar qform(const weight& a, const weight& b) const;

private:
    char type_;
    int rank_;
    std::vector<std::vector<int>> a_;
    std::vector<int> d_;
    std::vector<std::vector<rat>> ainv_;
    std::vector<root> pos_;
};

using rs_ptr = std::shared_ptr<const root_system>;
rs_ptr build_root_system(char type, int rank);

// greedy left-descent word: w = s_{i1} s_{i2} ... represented through w(ρ)
std::vector<int> reduced_word_for(const root_system& rs, const weight& w_rho,
                                  const std::vector<bool>& allowed);
// β_k = s_{i1}...s_{i_{k-1}}(α_{ik}); throws NotReduced if they are not distinct positive roots
std::vector<weight> word_roots(const root_system& rs, const std::vector<int>& word);
std::vector<int> longest_word(const root_system& rs);
// reduced word for the longest element of the parabolic subgroup on the allowed nodes
std::vector<int> levi_longest_word(const root_system& rs, const std::vector<bool>& allowed);

std::vector<int> positive_root_chain(const root_system& rs, const weight& beta);
std::vector<int> cominuscule_nodes(const root_system& rs);

struct parabolic {
    rs_ptr rs;
    int s = 0;                        // excluded node (0-based)
    std::vector<int> levi_word;       // reduced word for w_{0,l}
    std::vector<int> parabolic_word;  // reduced word for w_l
    std::vector<weight> levi_roots;   // Φ⁺(l) in the order of levi_word
    std::vector<weight> xi;           // radical roots ξ_1 … ξ_N
    bool cominuscule = false;

    std::vector<int> full_word() const;
    int N() const { return static_cast<int>(xi.size()); }
    bool in_levi(int i) const { return i != s; }
    // 2ρ_l
    weight two_rho_levi() const;
    // node marks of u_- highest weight −α_s restricted to the Levi: −a_js, j ≠ s
    std::vector<int> u_minus_marks() const;
};

// s is 0-based; throws NotCominuscule when require_cominuscule and s is not
parabolic build_parabolic(rs_ptr rs, int s, bool require_cominuscule = true);

}  // namespace qcl
