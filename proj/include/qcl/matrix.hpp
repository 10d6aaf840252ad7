#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "qcl/field.hpp"

namespace qcl {

using vec = std::vector<scalar>;

// Dense row-major matrix over Q(u). Products skip zero entries, which matters
// because nearly everything we multiply is weight-sparse.
class mat {
public:
    mat() = default;
    mat(size_t r, size_t c) : r_(r), c_(c), a_(r * c) {}
    static mat identity(size_t n);
    static mat from_columns(const std::vector<vec>& cols, size_t rows);

    size_t rows() const { return r_; }
    size_t cols() const { return c_; }
    scalar& operator()(size_t i, size_t j) { return a_[i * c_ + j]; }
    const scalar& operator()(size_t i, size_t j) const { return a_[i * c_ + j]; }

    vec col(size_t j) const;
    vec row(size_t i) const;
    void set_col(size_t j, const vec& v);

    mat operator*(const mat& o) const;
    vec operator*(const vec& v) const;
    mat operator+(const mat& o) const;
    mat operator-(const mat& o) const;
    mat operator-() const;
    mat scaled(const scalar& s) const;
    mat& operator+=(const mat& o);
    mat transpose() const;

    bool is_zero() const;
    size_t nonzeros() const;
    bool operator==(const mat& o) const;
    bool operator!=(const mat& o) const { return !(*this == o); }

    mat block(const std::vector<size_t>& rows, const std::vector<size_t>& cols) const;
    mat hcat(const mat& o) const;
    mat vcat(const mat& o) const;

private:
    size_t r_ = 0, c_ = 0;
    std::vector<scalar> a_;
};

mat kron(const mat& a, const mat& b);

// --- exact linear algebra over Q(u) ---
//
// All routines split the matrix into connected components of its nonzero
// pattern first; weight-preserving maps fall apart into small blocks this way.

size_t rank(const mat& a);
// columns form a basis of the right kernel
mat kernel(const mat& a);
// a basis (as columns) of the column space, chosen among the columns of a
mat column_basis(const mat& a);
// X with a*X = b, or nullopt when inconsistent
std::optional<mat> solve(const mat& a, const mat& b);
mat inverse(const mat& a);
// basis of span(a) ∩ span(b)
mat intersect(const mat& a, const mat& b);
// basis of span(a) + span(b)
mat span_sum(const mat& a, const mat& b);
// left annihilator: basis of {f : f^T a = 0} as columns
mat annihilator(const mat& a);

// Incremental echelon basis used when building cyclic submodules: tells
// whether a vector enlarges the span and yields coordinates for members.
class span_builder {
public:
    explicit span_builder(size_t dim) : dim_(dim) {}
    bool add(const vec& v);  // true when v was independent and was added
    size_t size() const { return basis_.size(); }
    const std::vector<vec>& basis() const { return basis_; }
    // coordinates of v in the stored basis; throws when v is not in the span
    vec coords(const vec& v) const;

private:
    vec reduce(const vec& v, vec* combo) const;
    size_t dim_;
    std::vector<vec> basis_;
    std::vector<vec> ech_;        // echelonized rows
    std::vector<size_t> pivot_;   // pivot column of each echelon row
    std::vector<vec> ech_combo_;  // ech_[k] = sum combo[k][j] basis_[j]
};

}  // namespace qcl
