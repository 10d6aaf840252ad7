#include "qcl/roots.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "qcl/errors.hpp"

namespace qcl {

weight operator+(const weight& a, const weight& b) {
    weight r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

weight operator-(const weight& a, const weight& b) {
    weight r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

weight operator-(const weight& a) {
    weight r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

weight operator*(int k, const weight& a) {
    weight r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = k * a[i];
    return r;
}

std::string weight_str(const weight& w) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < w.size(); ++i) os << (i ? "," : "") << w[i];
    os << ")";
    return os.str();
}

int root::height() const { return std::accumulate(coeffs.begin(), coeffs.end(), 0); }

namespace {

bool valid_type(char t, int n) {
    switch (t) {
        case 'A': return n >= 1;
        case 'B': return n >= 2;
        case 'C': return n >= 2;
        case 'D': return n >= 3;
        case 'E': return n >= 6 && n <= 8;
        case 'F': return n == 4;
        case 'G': return n == 2;
        default: return false;
    }
}

// symmetrized form B_ij = (α_i, α_j) with short roots of length 2
std::vector<std::vector<int>> simple_form(char t, int n) {
    std::vector<std::vector<int>> b(n, std::vector<int>(n, 0));
    auto link = [&](int i, int j, int v) { b[i][j] = b[j][i] = v; };
    switch (t) {
        case 'A':
            for (int i = 0; i < n; ++i) b[i][i] = 2;
            for (int i = 0; i + 1 < n; ++i) link(i, i + 1, -1);
            break;
        case 'B':
            for (int i = 0; i < n; ++i) b[i][i] = 4;
            b[n - 1][n - 1] = 2;
            for (int i = 0; i + 1 < n; ++i) link(i, i + 1, -2);
            break;
        case 'C':
            for (int i = 0; i < n; ++i) b[i][i] = 2;
            b[n - 1][n - 1] = 4;
            for (int i = 0; i + 2 < n; ++i) link(i, i + 1, -1);
            link(n - 2, n - 1, -2);
            break;
        case 'D':
            for (int i = 0; i < n; ++i) b[i][i] = 2;
            for (int i = 0; i + 2 < n; ++i) link(i, i + 1, -1);
            link(n - 3, n - 1, -1);
            break;
        case 'E':
            for (int i = 0; i < n; ++i) b[i][i] = 2;
            link(0, 2, -1);
            link(1, 3, -1);
            for (int i = 2; i + 1 < n; ++i) link(i, i + 1, -1);
            break;
        case 'F':
            b[0][0] = b[1][1] = 4;
            b[2][2] = b[3][3] = 2;
            link(0, 1, -2);
            link(1, 2, -2);
            link(2, 3, -1);
            break;
        case 'G':
            b[0][0] = 2;
            b[1][1] = 6;
            link(0, 1, -3);
            break;
    }
    return b;
}

}  // namespace

root_system::root_system(char type, int rank) : type_(type), rank_(rank) {
    if (!valid_type(type, rank))
        fail("InvalidType", std::string(1, type) + std::to_string(rank) + " is not a finite type");
    const int n = rank;
    auto b = simple_form(type, n);
    a_.assign(n, std::vector<int>(n));
    d_.resize(n);
    for (int i = 0; i < n; ++i) {
        d_[i] = b[i][i] / 2;
        for (int j = 0; j < n; ++j) a_[i][j] = 2 * b[i][j] / b[i][i];
    }
    // inverse Cartan matrix by Gauss-Jordan over Q
    std::vector<std::vector<rat>> m(n, std::vector<rat>(2 * n));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) m[i][j] = a_[i][j];
        m[i][n + i] = 1;
    }
    for (int c = 0; c < n; ++c) {
        int p = c;
        while (m[p][c] == 0) ++p;
        std::swap(m[p], m[c]);
        rat inv = 1 / m[c][c];
        for (auto& x : m[c]) x *= inv;
        for (int r = 0; r < n; ++r) {
            if (r == c || m[r][c] == 0) continue;
            rat f = m[r][c];
            for (int k = 0; k < 2 * n; ++k) m[r][k] -= f * m[c][k];
        }
    }
    ainv_.assign(n, std::vector<rat>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) ainv_[i][j] = m[i][n + j];

    // positive roots by closure under simple reflections
    std::set<std::vector<int>> seen;
    std::vector<std::vector<int>> todo;
    for (int i = 0; i < n; ++i) {
        std::vector<int> e(n, 0);
        e[i] = 1;
        seen.insert(e);
        todo.push_back(e);
    }
    while (!todo.empty()) {
        auto c = todo.back();
        todo.pop_back();
        for (int i = 0; i < n; ++i) {
            int pair = 0;
            for (int j = 0; j < n; ++j) pair += a_[i][j] * c[j];
            auto r = c;
            r[i] -= pair;
            if (std::any_of(r.begin(), r.end(), [](int x) { return x < 0; })) continue;
            if (std::all_of(r.begin(), r.end(), [](int x) { return x == 0; })) continue;
            if (seen.insert(r).second) todo.push_back(r);
        }
    }
    for (const auto& c : seen) {
        root r;
        r.coeffs = c;
        r.w.assign(n, 0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) r.w[i] += a_[i][j] * c[j];
        pos_.push_back(std::move(r));
    }
    std::stable_sort(pos_.begin(), pos_.end(), [](const root& x, const root& y) {
        if (x.height() != y.height()) return x.height() < y.height();
        return x.coeffs > y.coeffs;
    });
}

weight root_system::simple_root(int i) const {
    weight w(rank_);
    for (int k = 0; k < rank_; ++k) w[k] = a_[k][i];
    return w;
}

weight root_system::fundamental(int i) const {
    weight w(rank_, 0);
    w[i] = 1;
    return w;
}

weight root_system::rho() const { return weight(rank_, 1); }

bool root_system::is_dominant(const weight& w) const {
    return std::all_of(w.begin(), w.end(), [](int x) { return x >= 0; });
}

std::vector<rat> root_system::root_coords(const weight& w) const {
    std::vector<rat> c(rank_, rat(0));
    for (int i = 0; i < rank_; ++i)
        for (int j = 0; j < rank_; ++j) c[i] += ainv_[i][j] * w[j];
    return c;
}

rat root_system::form(const weight& a, const weight& b) const {
    auto c = root_coords(a);
    rat s = 0;
    for (int j = 0; j < rank_; ++j) s += c[j] * d_[j] * b[j];
    return s;
}

int root_system::find_positive_coeffs(const std::vector<int>& coeffs) const {
    for (size_t k = 0; k < pos_.size(); ++k)
        if (pos_[k].coeffs == coeffs) return static_cast<int>(k);
    return -1;
}

int root_system::find_positive(const weight& w) const {
    for (size_t k = 0; k < pos_.size(); ++k)
        if (pos_[k].w == w) return static_cast<int>(k);
    return -1;
}

weight root_system::reflect(int i, const weight& w) const {
    weight r = w;
    const int c = w[i];
    for (int k = 0; k < rank_; ++k) r[k] -= c * a_[k][i];
    return r;
}

weight root_system::apply_word(const std::vector<int>& word, const weight& w) const {
    weight r = w;
    for (size_t k = word.size(); k-- > 0;) r = reflect(word[k], r);
    return r;
}

int root_system::root_degree() const {
    mpz_class l = 1;
    for (int i = 0; i < rank_; ++i)
        for (int j = 0; j < rank_; ++j) {
            rat f = form(fundamental(i), fundamental(j));
            f.canonicalize();
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), f.get_den_mpz_t());
        }
    return static_cast<int>(l.get_si());
}

long root_system::weyl_dimension(const weight& lambda) const {
    rat p = 1;
    weight lr = lambda + rho();
    for (const auto& b : pos_) p *= form(lr, b.w) / form(rho(), b.w);
    p.canonicalize();
    if (p.get_den() != 1) fail("InternalError", "Weyl dimension not integral");
    return p.get_num().get_si();
}

scalar root_system::qform(const weight& a, const weight& b) const {
    return context().qpow(form(a, b));
}

rs_ptr build_root_system(char type, int rank) { return std::make_shared<root_system>(type, rank); }

std::vector<int> reduced_word_for(const root_system& rs, const weight& w_rho,
                                  const std::vector<bool>& allowed) {
    std::vector<int> word;
    weight mu = w_rho;
    const weight rho = rs.rho();
    while (mu != rho) {
        int i = -1;
        for (int k = 0; k < rs.rank(); ++k)
            if (allowed[k] && mu[k] < 0) {
                i = k;
                break;
            }
        if (i < 0) fail("InternalError", "descent search left the parabolic subgroup");
        word.push_back(i);
        mu = rs.reflect(i, mu);
    }
    return word;
}

std::vector<weight> word_roots(const root_system& rs, const std::vector<int>& word) {
    std::vector<weight> out;
    std::set<weight> seen;
    for (size_t k = 0; k < word.size(); ++k) {
        std::vector<int> prefix(word.begin(), word.begin() + k);
        weight b = rs.apply_word(prefix, rs.simple_root(word[k]));
        if (rs.find_positive(b) < 0 || !seen.insert(b).second)
            fail("NotReduced", "word is not reduced");
        out.push_back(b);
    }
    return out;
}

std::vector<int> levi_longest_word(const root_system& rs, const std::vector<bool>& allowed) {
    // w_{0,l}(ρ): climb within W_l until no allowed coordinate is positive
    weight mu = rs.rho();
    bool changed = true;
    while (changed) {
        changed = false;
        for (int j = 0; j < rs.rank(); ++j)
            if (allowed[j] && mu[j] > 0) {
                mu = rs.reflect(j, mu);
                changed = true;
                break;
            }
    }
    return reduced_word_for(rs, mu, allowed);
}

std::vector<int> longest_word(const root_system& rs) {
    return reduced_word_for(rs, -rs.rho(), std::vector<bool>(rs.rank(), true));
}

std::vector<int> positive_root_chain(const root_system& rs, const weight& beta) {
    if (rs.find_positive(beta) < 0) fail("NotAPositiveRoot", weight_str(beta));
    // peel simple roots off the right end while staying in Φ⁺
    std::vector<int> rev;
    weight cur = beta;
    while (true) {
        int idx = rs.find_positive(cur);
        const auto& c = rs.positive_roots()[idx].coeffs;
        if (rs.positive_roots()[idx].height() == 1) {
            rev.push_back(static_cast<int>(std::find(c.begin(), c.end(), 1) - c.begin()));
            break;
        }
        bool moved = false;
        for (int i = 0; i < rs.rank() && !moved; ++i) {
            weight nxt = cur - rs.simple_root(i);
            if (rs.find_positive(nxt) >= 0) {
                rev.push_back(i);
                cur = nxt;
                moved = true;
            }
        }
        if (!moved) fail("InternalError", "root chain search failed");
    }
    return std::vector<int>(rev.rbegin(), rev.rend());
}

std::vector<int> cominuscule_nodes(const root_system& rs) {
    std::vector<int> out;
    const auto& th = rs.highest_root().coeffs;
    for (int i = 0; i < rs.rank(); ++i)
        if (th[i] == 1) out.push_back(i);
    return out;
}

std::vector<int> parabolic::full_word() const {
    std::vector<int> w = levi_word;
    w.insert(w.end(), parabolic_word.begin(), parabolic_word.end());
    return w;
}

weight parabolic::two_rho_levi() const {
    weight t(rs->rank(), 0);
    for (const auto& r : levi_roots) t = t + r;
    return t;
}

std::vector<int> parabolic::u_minus_marks() const {
    std::vector<int> m;
    for (int j = 0; j < rs->rank(); ++j)
        if (j != s) m.push_back(-rs->cartan(j, s));
    return m;
}

parabolic build_parabolic(rs_ptr rs, int s, bool require_cominuscule) {
    if (s < 0 || s >= rs->rank()) fail("IndexOutOfRange", "node " + std::to_string(s + 1));
    parabolic pd;
    pd.rs = rs;
    pd.s = s;
    const int n = rs->rank();
    std::vector<bool> levi(n, true);
    levi[s] = false;
    pd.levi_word = levi_longest_word(*rs, levi);
    const weight mu = rs->apply_word(pd.levi_word, rs->rho());
    // w_l = w_{0,l}^{-1} w_0 = w_{0,l} w_0, so w_l(ρ) = -w_{0,l}(ρ)
    pd.parabolic_word = reduced_word_for(*rs, -mu, std::vector<bool>(n, true));
    auto roots = word_roots(*rs, pd.full_word());
    if (roots.size() != rs->positive_roots().size())
        fail("InternalError", "parabolic factorization is not a reduced word for w0");
    const size_t M = pd.levi_word.size();
    pd.levi_roots.assign(roots.begin(), roots.begin() + M);
    pd.xi.assign(roots.begin() + M, roots.end());
    auto cn = cominuscule_nodes(*rs);
    pd.cominuscule = std::find(cn.begin(), cn.end(), s) != cn.end();
    if (require_cominuscule && !pd.cominuscule)
        fail("NotCominuscule", "node " + std::to_string(s + 1) + " of " + rs->label());
    return pd;
}

}  // namespace qcl
