#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qcl/field.hpp"
#include "qcl/roots.hpp"

namespace qcl {

struct gen {
    enum kind_t : char { E = 'E', F = 'F', K = 'K' };
    kind_t kind;
    int idx = 0;  // for E, F
    weight lam;   // for K

    static gen e(int i) { return {E, i, {}}; }
    static gen f(int i) { return {F, i, {}}; }
    static gen k(weight l) { return {K, 0, std::move(l)}; }

    bool operator<(const gen& o) const;
    bool operator==(const gen& o) const { return kind == o.kind && idx == o.idx && lam == o.lam; }
};

using word = std::vector<gen>;

// Linear combination of words in E_i, F_i, K_λ. The only normalization is
// merging adjacent K's; equality of elements is semantic and is decided by
// acting on probe modules (see modules.hpp).
class element {
public:
    element() = default;
    explicit element(const scalar& c);  // c·1
    static element of(gen g);
    static element e(int i) { return of(gen::e(i)); }
    static element f(int i) { return of(gen::f(i)); }
    static element k(const weight& l) { return of(gen::k(l)); }

    const std::map<word, scalar>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    size_t size() const { return t_.size(); }

    element operator+(const element& o) const;
    element operator-(const element& o) const;
    element operator-() const;
    element operator*(const element& o) const;
    element scaled(const scalar& s) const;
    element& operator+=(const element& o);
    element pow(int n) const;

    void add_term(word w, const scalar& c);

private:
    std::map<word, scalar> t_;
};

element operator*(const scalar& s, const element& x);

// Σ c · (a ⊗ b) over pairs of words.
class tensor_element {
public:
    const std::map<std::pair<word, word>, scalar>& terms() const { return t_; }
    void add_term(word a, word b, const scalar& c);
    tensor_element operator*(const tensor_element& o) const;
    tensor_element operator+(const tensor_element& o) const;
    static tensor_element one();

private:
    std::map<std::pair<word, word>, scalar> t_;
};

// Algebra-level operations; all need the root system for K_j = K_{α_j} and
// q_j = q^{d_j}.
class uq {
public:
    explicit uq(rs_ptr rs) : rs_(std::move(rs)), ctx_(rs_->context()) {}
    const root_system& rs() const { return *rs_; }
    rs_ptr shared_rs() const { return rs_; }
    const scalar_context& ctx() const { return ctx_; }

    element Kj(int j, int power = 1) const { return element::k(power * rs_->simple_root(j)); }

    tensor_element coproduct(const element& x) const;
    element antipode(const element& x) const;
    element antipode_inverse(const element& x) const;
    scalar counit(const element& x) const;
    element star(const element& x) const;

    element braid(int i, const element& x) const;           // T_i
    element braid_word(const std::vector<int>& w, const element& x) const;  // T_{i1}...T_{ik}(x)
    // E_{β_k} and F_{β_k} for the given reduced word
    std::vector<element> root_vectors_e(const std::vector<int>& w) const;
    std::vector<element> root_vectors_f(const std::vector<int>& w) const;

    // x ▷ a = x_(1) a S(x_(2))
    element adjoint(const element& x, const element& a) const;

    // the defining relations, as elements that must act by zero
    std::vector<std::pair<std::string, element>> relations() const;

    std::string render(const element& x) const;

private:
    element antipode_gen(const gen& g) const;
    element antipode_inv_gen(const gen& g) const;
    element braid_gen(int i, const gen& g) const;
    element divided_power(gen::kind_t k, int i, int n) const;

    rs_ptr rs_;
    scalar_context ctx_;
};

}  // namespace qcl
