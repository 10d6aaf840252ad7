#include "qcl/matrix.hpp"

#include <algorithm>
#include <numeric>

#include "qcl/errors.hpp"

namespace qcl {

mat mat::identity(size_t n) {
    mat m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = scalar(1);
    return m;
}

mat mat::from_columns(const std::vector<vec>& cols, size_t rows) {
    mat m(rows, cols.size());
    for (size_t j = 0; j < cols.size(); ++j) m.set_col(j, cols[j]);
    return m;
}

vec mat::col(size_t j) const {
    vec v(r_);
    for (size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
    return v;
}

vec mat::row(size_t i) const {
    return vec(a_.begin() + i * c_, a_.begin() + (i + 1) * c_);
}

void mat::set_col(size_t j, const vec& v) {
    if (v.size() != r_) fail("DimensionMismatch", "column length");
    for (size_t i = 0; i < r_; ++i) (*this)(i, j) = v[i];
}

mat mat::operator*(const mat& o) const {
    if (c_ != o.r_) fail("DimensionMismatch", "matrix product");
    mat m(r_, o.c_);
    // sparse row lists of o
    std::vector<std::vector<size_t>> nz(o.r_);
    for (size_t k = 0; k < o.r_; ++k)
        for (size_t j = 0; j < o.c_; ++j)
            if (!o(k, j).is_zero()) nz[k].push_back(j);
    for (size_t i = 0; i < r_; ++i)
        for (size_t k = 0; k < c_; ++k) {
            const scalar& x = (*this)(i, k);
            if (x.is_zero()) continue;
            for (size_t j : nz[k]) m(i, j) += x * o(k, j);
        }
    return m;
}

vec mat::operator*(const vec& v) const {
    if (v.size() != c_) fail("DimensionMismatch", "matrix-vector product");
    vec out(r_);
    for (size_t j = 0; j < c_; ++j) {
        if (v[j].is_zero()) continue;
        for (size_t i = 0; i < r_; ++i) {
            const scalar& x = (*this)(i, j);
            if (!x.is_zero()) out[i] += x * v[j];
        }
    }
    return out;
}

mat mat::operator+(const mat& o) const {
    mat m = *this;
    m += o;
    return m;
}

mat& mat::operator+=(const mat& o) {
    if (r_ != o.r_ || c_ != o.c_) fail("DimensionMismatch", "matrix sum");
    for (size_t k = 0; k < a_.size(); ++k)
        if (!o.a_[k].is_zero()) a_[k] += o.a_[k];
    return *this;
}

mat mat::operator-() const {
    mat m = *this;
    for (auto& x : m.a_)
        if (!x.is_zero()) x = -x;
    return m;
}

mat mat::operator-(const mat& o) const { return *this + (-o); }

mat mat::scaled(const scalar& s) const {
    mat m = *this;
    for (auto& x : m.a_)
        if (!x.is_zero()) x *= s;
    return m;
}

mat mat::transpose() const {
    mat m(c_, r_);
    for (size_t i = 0; i < r_; ++i)
        for (size_t j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
    return m;
}

bool mat::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const scalar& x) { return x.is_zero(); });
}

size_t mat::nonzeros() const {
    return std::count_if(a_.begin(), a_.end(), [](const scalar& x) { return !x.is_zero(); });
}

bool mat::operator==(const mat& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }

mat mat::block(const std::vector<size_t>& rows, const std::vector<size_t>& cols) const {
    mat m(rows.size(), cols.size());
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < cols.size(); ++j) m(i, j) = (*this)(rows[i], cols[j]);
    return m;
}

mat mat::hcat(const mat& o) const {
    if (r_ != o.r_) fail("DimensionMismatch", "hcat");
    mat m(r_, c_ + o.c_);
    for (size_t i = 0; i < r_; ++i) {
        for (size_t j = 0; j < c_; ++j) m(i, j) = (*this)(i, j);
        for (size_t j = 0; j < o.c_; ++j) m(i, c_ + j) = o(i, j);
    }
    return m;
}

mat mat::vcat(const mat& o) const {
    if (c_ != o.c_) fail("DimensionMismatch", "vcat");
    mat m(r_ + o.r_, c_);
    for (size_t i = 0; i < r_; ++i)
        for (size_t j = 0; j < c_; ++j) m(i, j) = (*this)(i, j);
    for (size_t i = 0; i < o.r_; ++i)
        for (size_t j = 0; j < c_; ++j) m(r_ + i, j) = o(i, j);
    return m;
}

mat kron(const mat& a, const mat& b) {
    mat m(a.rows() * b.rows(), a.cols() * b.cols());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) {
            const scalar& x = a(i, j);
            if (x.is_zero()) continue;
            for (size_t k = 0; k < b.rows(); ++k)
                for (size_t l = 0; l < b.cols(); ++l) {
                    const scalar& y = b(k, l);
                    if (!y.is_zero()) m(i * b.rows() + k, j * b.cols() + l) = x * y;
                }
        }
    return m;
}

// ---------------------------------------------------------------------------
// elimination core

namespace {

struct component {
    std::vector<size_t> rows, cols;
};

struct dsu {
    std::vector<size_t> p;
    explicit dsu(size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    size_t find(size_t x) {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    }
    void unite(size_t a, size_t b) { p[find(a)] = find(b); }
};

// Components of the bipartite nonzero graph. Columns without nonzeros come
// back as components with no rows; empty rows are dropped.
std::vector<component> components(const mat& a) {
    const size_t R = a.rows(), C = a.cols();
    dsu d(R + C);
    std::vector<bool> row_used(R, false);
    for (size_t i = 0; i < R; ++i)
        for (size_t j = 0; j < C; ++j)
            if (!a(i, j).is_zero()) {
                d.unite(i, R + j);
                row_used[i] = true;
            }
    std::vector<long> id(R + C, -1);
    std::vector<component> out;
    for (size_t j = 0; j < C; ++j) {
        size_t r = d.find(R + j);
        if (id[r] < 0) {
            id[r] = static_cast<long>(out.size());
            out.emplace_back();
        }
        out[id[r]].cols.push_back(j);
    }
    for (size_t i = 0; i < R; ++i) {
        if (!row_used[i]) continue;
        out[id[d.find(i)]].rows.push_back(i);
    }
    return out;
}

// In-place reduced row echelon form over the first `ncols` columns (further
// columns ride along). Returns pivot columns.
std::vector<size_t> rref(mat& m, size_t ncols) {
    std::vector<size_t> piv;
    size_t r = 0;
    const size_t R = m.rows(), C = m.cols();
    for (size_t j = 0; j < ncols && r < R; ++j) {
        size_t best = R;
        int bw = 0;
        for (size_t i = r; i < R; ++i) {
            if (m(i, j).is_zero()) continue;
            int w = m(i, j).weight();
            if (best == R || w < bw) {
                best = i;
                bw = w;
            }
        }
        if (best == R) continue;
        if (best != r)
            for (size_t k = 0; k < C; ++k) std::swap(m(r, k), m(best, k));
        const scalar inv = m(r, j).inv();
        for (size_t k = j; k < C; ++k)
            if (!m(r, k).is_zero()) m(r, k) *= inv;
        std::vector<size_t> nzk;
        for (size_t k = j; k < C; ++k)
            if (!m(r, k).is_zero()) nzk.push_back(k);
        for (size_t i = 0; i < R; ++i) {
            if (i == r || m(i, j).is_zero()) continue;
            const scalar f = m(i, j);
            for (size_t k : nzk) m(i, k) -= f * m(r, k);
        }
        piv.push_back(j);
        ++r;
    }
    return piv;
}

}  // namespace

size_t rank(const mat& a) {
    size_t total = 0;
    for (const auto& c : components(a)) {
        if (c.rows.empty()) continue;
        mat b = a.block(c.rows, c.cols);
        total += rref(b, b.cols()).size();
    }
    return total;
}

mat kernel(const mat& a) {
    std::vector<vec> vs;
    for (const auto& c : components(a)) {
        if (c.rows.empty()) {
            for (size_t j : c.cols) {
                vec v(a.cols());
                v[j] = scalar(1);
                vs.push_back(std::move(v));
            }
            continue;
        }
        mat b = a.block(c.rows, c.cols);
        auto piv = rref(b, b.cols());
        std::vector<bool> is_piv(b.cols(), false);
        for (size_t p : piv) is_piv[p] = true;
        for (size_t f = 0; f < b.cols(); ++f) {
            if (is_piv[f]) continue;
            vec v(a.cols());
            v[c.cols[f]] = scalar(1);
            for (size_t r = 0; r < piv.size(); ++r)
                if (!b(r, f).is_zero()) v[c.cols[piv[r]]] = -b(r, f);
            vs.push_back(std::move(v));
        }
    }
    // deterministic order: by first nonzero index
    std::stable_sort(vs.begin(), vs.end(), [](const vec& x, const vec& y) {
        size_t i = 0, j = 0;
        while (i < x.size() && x[i].is_zero()) ++i;
        while (j < y.size() && y[j].is_zero()) ++j;
        return i < j;
    });
    return mat::from_columns(vs, a.cols());
}

mat column_basis(const mat& a) {
    std::vector<size_t> keep;
    for (const auto& c : components(a)) {
        if (c.rows.empty()) continue;
        mat b = a.block(c.rows, c.cols);
        for (size_t p : rref(b, b.cols())) keep.push_back(c.cols[p]);
    }
    std::sort(keep.begin(), keep.end());
    std::vector<size_t> all(a.rows());
    std::iota(all.begin(), all.end(), 0);
    return a.block(all, keep);
}

std::optional<mat> solve(const mat& a, const mat& b) {
    if (a.rows() != b.rows()) fail("DimensionMismatch", "solve");
    mat x(a.cols(), b.cols());
    std::vector<bool> covered(a.rows(), false);
    std::vector<size_t> bcols(b.cols());
    std::iota(bcols.begin(), bcols.end(), 0);
    for (const auto& c : components(a)) {
        if (c.rows.empty()) continue;
        for (size_t i : c.rows) covered[i] = true;
        mat m = a.block(c.rows, c.cols).hcat(b.block(c.rows, bcols));
        const size_t n = c.cols.size();
        auto piv = rref(m, n);
        for (size_t r = piv.size(); r < m.rows(); ++r)
            for (size_t k = n; k < m.cols(); ++k)
                if (!m(r, k).is_zero()) return std::nullopt;
        for (size_t r = 0; r < piv.size(); ++r)
            for (size_t k = 0; k < b.cols(); ++k) x(c.cols[piv[r]], k) = m(r, n + k);
    }
    for (size_t i = 0; i < a.rows(); ++i) {
        if (covered[i]) continue;
        for (size_t k = 0; k < b.cols(); ++k)
            if (!b(i, k).is_zero()) return std::nullopt;
    }
    return x;
}

mat inverse(const mat& a) {
    if (a.rows() != a.cols()) fail("DimensionMismatch", "inverse of non-square matrix");
    if (rank(a) != a.rows()) fail("Singular", "matrix is not invertible");
    auto x = solve(a, mat::identity(a.rows()));
    if (!x) fail("Singular", "matrix is not invertible");
    return *x;
}

mat intersect(const mat& a, const mat& b) {
    mat A = column_basis(a), B = column_basis(b);
    if (A.cols() == 0 || B.cols() == 0) return mat(a.rows(), 0);
    mat K = kernel(A.hcat(-B));
    std::vector<size_t> top(A.cols()), all(K.cols());
    std::iota(top.begin(), top.end(), 0);
    std::iota(all.begin(), all.end(), 0);
    return column_basis(A * K.block(top, all));
}

mat span_sum(const mat& a, const mat& b) { return column_basis(a.hcat(b)); }

mat annihilator(const mat& a) { return kernel(a.transpose()); }

// ---------------------------------------------------------------------------

vec span_builder::reduce(const vec& v, vec* combo) const {
    vec w = v;
    if (combo) combo->assign(basis_.size(), scalar());
    for (size_t k = 0; k < ech_.size(); ++k) {
        const scalar& x = w[pivot_[k]];
        if (x.is_zero()) continue;
        const scalar f = x / ech_[k][pivot_[k]];
        for (size_t i = 0; i < dim_; ++i)
            if (!ech_[k][i].is_zero()) w[i] -= f * ech_[k][i];
        if (combo)
            for (size_t j = 0; j < ech_combo_[k].size(); ++j)
                if (!ech_combo_[k][j].is_zero()) (*combo)[j] += f * ech_combo_[k][j];
    }
    return w;
}

bool span_builder::add(const vec& v) {
    if (v.size() != dim_) fail("DimensionMismatch", "span_builder vector");
    vec f;
    vec w = reduce(v, &f);
    size_t p = 0;
    while (p < dim_ && w[p].is_zero()) ++p;
    if (p == dim_) return false;
    vec combo(basis_.size() + 1);
    for (size_t j = 0; j < f.size(); ++j) combo[j] = -f[j];
    combo[basis_.size()] = scalar(1);
    basis_.push_back(v);
    for (auto& c : ech_combo_) c.resize(basis_.size());
    ech_.push_back(std::move(w));
    pivot_.push_back(p);
    ech_combo_.push_back(std::move(combo));
    return true;
}

vec span_builder::coords(const vec& v) const {
    vec f;
    vec w = reduce(v, &f);
    for (const auto& x : w)
        if (!x.is_zero()) fail("NotInSpan", "vector outside the span");
    return f;
}

}  // namespace qcl
