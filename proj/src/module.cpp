#include "qcl/module.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "qcl/errors.hpp"

namespace qcl {

weight_module::weight_module(rs_ptr r, std::vector<weight> w, std::vector<bool> act)
    : rs(std::move(r)), ctx(rs->context()), active(std::move(act)), wts(std::move(w)) {
    if (active.empty()) active.assign(rs->rank(), true);
    E.assign(rs->rank(), mat(dim(), dim()));
    F.assign(rs->rank(), mat(dim(), dim()));
}

mat weight_module::K(const weight& lam) const {
    mat k(dim(), dim());
    for (size_t b = 0; b < dim(); ++b) k(b, b) = rs->qform(lam, wts[b]);
    return k;
}

mat weight_module::gen_matrix(const gen& g) const {
    if (g.kind == gen::K) return K(g.lam);
    if (!active[g.idx]) fail("InactiveGenerator", "generator not in this subalgebra");
    return g.kind == gen::E ? E[g.idx] : F[g.idx];
}

void weight_module::apply_gen(const gen& g, vec& v) const {
    if (g.kind == gen::K) {
        for (size_t b = 0; b < dim(); ++b)
            if (!v[b].is_zero()) v[b] *= rs->qform(g.lam, wts[b]);
        return;
    }
    if (!active[g.idx]) fail("InactiveGenerator", "generator not in this subalgebra");
    v = (g.kind == gen::E ? E[g.idx] : F[g.idx]) * v;
}

vec weight_module::act(const element& x, const vec& v) const {
    if (v.size() != dim()) fail("DimensionMismatch", "vector length does not match module");
    vec out(dim());
    for (const auto& [w, c] : x.terms()) {
        vec t = v;
        for (size_t k = w.size(); k-- > 0;) apply_gen(w[k], t);
        for (size_t i = 0; i < dim(); ++i)
            if (!t[i].is_zero()) out[i] += c * t[i];
    }
    return out;
}

mat weight_module::act(const element& x) const {
    mat m(dim(), dim());
    std::map<gen, mat> memo;
    for (const auto& [w, c] : x.terms()) {
        if (w.empty()) {
            m += mat::identity(dim()).scaled(c);
            continue;
        }
        mat t;
        for (size_t k = w.size(); k-- > 0;) {
            auto it = memo.find(w[k]);
            if (it == memo.end()) it = memo.emplace(w[k], gen_matrix(w[k])).first;
            t = (k + 1 == w.size()) ? it->second : it->second * t;
        }
        m += t.scaled(c);
    }
    return m;
}

std::map<weight, std::vector<size_t>> weight_module::weight_spaces() const {
    std::map<weight, std::vector<size_t>> out;
    for (size_t b = 0; b < dim(); ++b) out[wts[b]].push_back(b);
    return out;
}

bool weight_module::same_algebra(const weight_module& o) const {
    return rs == o.rs || (rs->type() == o.rs->type() && rs->rank() == o.rs->rank());
}

void weight_module::check_compatible(const weight_module& o) const {
    if (!same_algebra(o) || !(ctx == o.ctx)) fail("ContextMismatch", "modules over different algebras");
    if (active != o.active) fail("ContextMismatch", "modules over different subalgebras");
}

// ---------------------------------------------------------------------------

weight_module trivial_module(rs_ptr rs, std::vector<bool> active) {
    weight_module m(rs, {weight(rs->rank(), 0)}, std::move(active));
    m.label = "trivial";
    m.highest = weight(rs->rank(), 0);
    return m;
}

weight_module seed_module(rs_ptr rs) {
    const char t = rs->type();
    const int n = rs->rank();
    if (t != 'A' && t != 'B' && t != 'C' && t != 'D')
        fail("UnsupportedType", "no seed module for type " + std::string(1, t));
    std::vector<weight> eps;
    eps.push_back(rs->fundamental(0));
    const int top = (t == 'A') ? n + 1 : n;
    for (int k = 1; k < top; ++k) eps.push_back(eps.back() - rs->simple_root(k - 1));
    std::vector<weight> w = eps;
    if (t == 'B') w.push_back(weight(n, 0));
    if (t != 'A')
        for (int k = n; k-- > 0;) w.push_back(-eps[k]);
    weight_module m(rs, w, {});
    const size_t dim = w.size();
    const auto ctx = m.ctx;
    for (int i = 0; i < n; ++i) {
        const weight a = rs->simple_root(i);
        auto find = [&](const weight& x) -> long {
            for (size_t b = 0; b < dim; ++b)
                if (w[b] == x) return static_cast<long>(b);
            return -1;
        };
        // α_i-strings: walk down from each top and fix F by [E,F] = [h]
        for (size_t b = 0; b < dim; ++b) {
            if (find(w[b] + a) >= 0) continue;
            std::vector<size_t> str{b};
            for (long nx = find(w[b] - a); nx >= 0; nx = find(w[str.back()] - a))
                str.push_back(static_cast<size_t>(nx));
            const long len = static_cast<long>(str.size()) - 1;
            for (long k = 0; k < len; ++k) {
                m.E[i](str[k], str[k + 1]) = scalar(1);
                m.F[i](str[k + 1], str[k]) = ctx.qnum(k + 1, rs->d(i)) * ctx.qnum(len - k, rs->d(i));
            }
        }
    }
    m.label = "V(" + weight_str(rs->fundamental(0)) + ")";
    m.highest = rs->fundamental(0);
    return m;
}

weight_module tensor(const weight_module& a, const weight_module& b) {
    a.check_compatible(b);
    std::vector<weight> w;
    for (const auto& x : a.wts)
        for (const auto& y : b.wts) w.push_back(x + y);
    weight_module m(a.rs, w, a.active);
    const mat ia = mat::identity(a.dim()), ib = mat::identity(b.dim());
    for (int i = 0; i < a.rank(); ++i) {
        if (!a.active[i]) continue;
        const weight al = a.rs->simple_root(i);
        m.E[i] = kron(a.E[i], ib) + kron(a.K(al), b.E[i]);
        m.F[i] = kron(a.F[i], b.K(-al)) + kron(ia, b.F[i]);
    }
    m.label = "(" + a.label + ")⊗(" + b.label + ")";
    return m;
}

weight_module tensor_power(const weight_module& a, int n) {
    if (n == 0) return trivial_module(a.rs, a.active);
    weight_module m = a;
    for (int k = 1; k < n; ++k) m = tensor(m, a);
    return m;
}

weight_module direct_sum(const weight_module& a, const weight_module& b) {
    a.check_compatible(b);
    std::vector<weight> w = a.wts;
    w.insert(w.end(), b.wts.begin(), b.wts.end());
    weight_module m(a.rs, w, a.active);
    const size_t da = a.dim();
    for (int i = 0; i < a.rank(); ++i) {
        for (size_t r = 0; r < da; ++r)
            for (size_t c = 0; c < da; ++c) {
                m.E[i](r, c) = a.E[i](r, c);
                m.F[i](r, c) = a.F[i](r, c);
            }
        for (size_t r = 0; r < b.dim(); ++r)
            for (size_t c = 0; c < b.dim(); ++c) {
                m.E[i](da + r, da + c) = b.E[i](r, c);
                m.F[i](da + r, da + c) = b.F[i](r, c);
            }
    }
    m.label = a.label + "⊕" + b.label;
    return m;
}

weight_module dual(const weight_module& x) {
    std::vector<weight> w;
    for (const auto& v : x.wts) w.push_back(-v);
    weight_module m(x.rs, w, x.active);
    for (int i = 0; i < x.rank(); ++i) {
        if (!x.active[i]) continue;
        const weight al = x.rs->simple_root(i);
        m.E[i] = -(x.K(-al) * x.E[i]).transpose();
        m.F[i] = -(x.F[i] * x.K(al)).transpose();
    }
    m.label = "(" + x.label + ")*";
    return m;
}

weight_module right_dual(const weight_module& x) {
    std::vector<weight> w;
    for (const auto& v : x.wts) w.push_back(-v);
    weight_module m(x.rs, w, x.active);
    for (int i = 0; i < x.rank(); ++i) {
        if (!x.active[i]) continue;
        const weight al = x.rs->simple_root(i);
        m.E[i] = -(x.E[i] * x.K(-al)).transpose();
        m.F[i] = -(x.K(al) * x.F[i]).transpose();
    }
    m.label = "*(" + x.label + ")";
    return m;
}

weight_module restrict_to(const weight_module& x, const std::vector<size_t>& idx) {
    std::vector<weight> w;
    for (size_t i : idx) w.push_back(x.wts[i]);
    weight_module m(x.rs, w, x.active);
    std::vector<bool> inside(x.dim(), false);
    for (size_t i : idx) inside[i] = true;
    for (int i = 0; i < x.rank(); ++i) {
        if (!x.active[i]) continue;
        for (const mat* g : {&x.E[i], &x.F[i]})
            for (size_t r = 0; r < x.dim(); ++r)
                for (size_t c : idx)
                    if (!inside[r] && !(*g)(r, c).is_zero())
                        fail("NotASubmodule", "index set is not stable");
        m.E[i] = x.E[i].block(idx, idx);
        m.F[i] = x.F[i].block(idx, idx);
    }
    m.label = x.label + "|";
    return m;
}

weight_module restrict_algebra(const weight_module& x, std::vector<bool> active) {
    weight_module m = x;
    m.active = std::move(active);
    for (int i = 0; i < x.rank(); ++i)
        if (!m.active[i]) {
            m.E[i] = mat(x.dim(), x.dim());
            m.F[i] = mat(x.dim(), x.dim());
        }
    m.highest.reset();
    return m;
}

submodule cyclic_submodule(const weight_module& m, const std::vector<vec>& gens) {
    auto spaces = m.weight_spaces();
    std::map<weight, span_builder> spans;
    std::map<weight, std::vector<size_t>> members;  // new basis indices per weight
    std::vector<vec> basis;
    std::vector<weight> bw;
    auto restrict_w = [&](const vec& v, const std::vector<size_t>& idx) {
        vec r(idx.size());
        for (size_t k = 0; k < idx.size(); ++k) r[k] = v[idx[k]];
        return r;
    };
    auto weight_of = [&](const vec& v) -> std::optional<weight> {
        std::optional<weight> w;
        for (size_t b = 0; b < v.size(); ++b)
            if (!v[b].is_zero()) {
                if (w && *w != m.wts[b]) fail("NotAWeightVector", "generator mixes weights");
                w = m.wts[b];
            }
        return w;
    };
    auto offer = [&](const vec& v) {
        auto w = weight_of(v);
        if (!w) return;
        const auto& idx = spaces[*w];
        auto it = spans.find(*w);
        if (it == spans.end()) it = spans.emplace(*w, span_builder(idx.size())).first;
        if (it->second.add(restrict_w(v, idx))) {
            members[*w].push_back(basis.size());
            basis.push_back(v);
            bw.push_back(*w);
        }
    };
    for (const auto& g : gens) offer(g);
    for (size_t k = 0; k < basis.size(); ++k) {
        for (int i = 0; i < m.rank(); ++i) {
            if (!m.active[i]) continue;
            offer(m.F[i] * basis[k]);
            offer(m.E[i] * basis[k]);
        }
    }
    submodule out;
    out.mod = weight_module(m.rs, bw, m.active);
    out.embedding = mat::from_columns(basis, m.dim());
    for (int i = 0; i < m.rank(); ++i) {
        if (!m.active[i]) continue;
        for (size_t k = 0; k < basis.size(); ++k) {
            for (int e = 0; e < 2; ++e) {
                vec img = (e == 0 ? m.E[i] : m.F[i]) * basis[k];
                auto w = weight_of(img);
                if (!w) continue;
                auto it = spans.find(*w);
                if (it == spans.end()) fail("InternalError", "cyclic closure incomplete");
                vec c = it->second.coords(restrict_w(img, spaces[*w]));
                const auto& mem = members[*w];
                for (size_t j = 0; j < c.size(); ++j)
                    if (!c[j].is_zero()) (e == 0 ? out.mod.E[i] : out.mod.F[i])(mem[j], k) = c[j];
            }
        }
    }
    out.mod.label = "sub(" + m.label + ")";
    return out;
}

namespace {

// ε_1 + … + ε_k style building blocks for classical types
struct block_recipe {
    int k;        // exterior degree inside V^{⊗k}
    weight w;     // highest weight
    bool dual;    // type A: take the dual of the complementary block
};

std::vector<block_recipe> split_weight(const root_system& rs, const weight& lam) {
    const char t = rs.type();
    const int n = rs.rank();
    std::vector<block_recipe> out;
    weight rest = lam;
    auto add = [&](int k, const weight& w, bool d) {
        out.push_back({k, w, d});
        rest = rest - w;
    };
    for (int i = 0; i < n; ++i) {
        const bool spin = (t == 'B' && i == n - 1) || (t == 'D' && i >= n - 2);
        if (spin) continue;
        while (rest[i] > 0) {
            if (t == 'A' && i + 1 > (n + 1) / 2)
                add(n - i, rs.fundamental(i), true);
            else
                add(i + 1, rs.fundamental(i), false);
        }
    }
    if (t == 'B') {
        if (rest[n - 1] % 2) fail("UnreachableWeight", "odd spin coordinate " + weight_str(lam));
        while (rest[n - 1] > 0) add(n, 2 * rs.fundamental(n - 1), false);
    }
    if (t == 'D') {
        while (rest[n - 2] > 0 && rest[n - 1] > 0)
            add(n - 1, rs.fundamental(n - 2) + rs.fundamental(n - 1), false);
        if (rest[n - 2] % 2 || rest[n - 1] % 2)
            fail("UnreachableWeight", "odd spin coordinates " + weight_str(lam));
        while (rest[n - 1] > 0) add(n, 2 * rs.fundamental(n - 1), false);
        while (rest[n - 2] > 0) add(n, 2 * rs.fundamental(n - 2), false);
    }
    return out;
}

weight_module generate_from_highest(const weight_module& amb, const weight& w) {
    mat h = highest_weight_vectors(amb, w);
    if (h.cols() == 0) fail("UnreachableWeight", "no highest weight vector of weight " + weight_str(w));
    submodule s = cyclic_submodule(amb, {h.col(0)});
    s.mod.highest = w;
    return s.mod;
}

weight_module exterior_block(rs_ptr rs, const weight_module& seed, int k, const weight& w,
                             std::map<int, weight_module>& cache) {
    if (k == 1) return seed;
    // e_{k-1} = ε_1 + … + ε_{k-1} is the sum of the first k-1 seed weights
    weight prev(rs->rank(), 0);
    for (int j = 0; j < k - 1; ++j) prev = prev + seed.wts[j];
    auto it = cache.find(k - 1);
    if (it == cache.end())
        it = cache.emplace(k - 1, exterior_block(rs, seed, k - 1, prev, cache)).first;
    return generate_from_highest(tensor(it->second, seed), w);
}

}  // namespace

weight_module simple_module(rs_ptr rs, const weight& lambda) {
    if (!rs->is_dominant(lambda)) fail("NotDominant", weight_str(lambda));
    if (std::all_of(lambda.begin(), lambda.end(), [](int x) { return x == 0; })) return trivial_module(rs);
    auto blocks = split_weight(*rs, lambda);
    weight_module seed = seed_module(rs);
    std::map<int, weight_module> cache;
    std::optional<weight_module> acc;
    for (const auto& b : blocks) {
        weight_module blk;
        if (b.dual) {
            // V(ω_i) = V(ω_k)* with k = rank + 1 - i
            weight_module base = exterior_block(rs, seed, b.k, rs->fundamental(b.k - 1), cache);
            blk = generate_from_highest(dual(base), b.w);
        } else {
            blk = exterior_block(rs, seed, b.k, b.w, cache);
        }
        if (!acc) {
            acc = blk;
            continue;
        }
        weight_module t = tensor(*acc, blk);
        vec top(t.dim());
        top[0] = scalar(1);  // v_top ⊗ v_top is always highest
        submodule s = cyclic_submodule(t, {top});
        s.mod.highest = *acc->highest + blk.wts[0];
        acc = s.mod;
    }
    acc->highest = lambda;
    acc->label = "V" + weight_str(lambda);
    if (static_cast<long>(acc->dim()) != rs->weyl_dimension(lambda))
        fail("InternalError", "simple module has wrong dimension");
    return *acc;
}

std::vector<std::string> relation_audit(const weight_module& m) {
    std::vector<std::string> bad;
    const auto& rs = *m.rs;
    const auto& ctx = m.ctx;
    const int n = m.rank();
    const mat id = mat::identity(m.dim());
    for (int i = 0; i < n; ++i) {
        if (!m.active[i]) continue;
        const weight ai = rs.simple_root(i);
        for (const mat* g : {&m.E[i], &m.F[i]}) {
            const int sgn = (g == &m.E[i]) ? 1 : -1;
            for (size_t r = 0; r < m.dim(); ++r)
                for (size_t c = 0; c < m.dim(); ++c)
                    if (!(*g)(r, c).is_zero() && m.wts[r] != m.wts[c] + sgn * ai)
                        bad.push_back("weight shift of generator " + std::to_string(i + 1));
        }
        for (int j = 0; j < n; ++j) {
            if (!m.active[j]) continue;
            mat c = m.E[i] * m.F[j] - m.F[j] * m.E[i];
            if (i == j) {
                const long di = rs.d(i);
                scalar den = ctx.qpow(di) - ctx.qpow(-di);
                c = c - (m.K(ai) - m.K(-ai)).scaled(den.inv());
            }
            if (!c.is_zero()) bad.push_back("[E" + std::to_string(i + 1) + ",F" + std::to_string(j + 1) + "]");
            if (i == j) continue;
            const int p = 1 - rs.cartan(i, j);
            for (int e = 0; e < 2; ++e) {
                const mat& X = e == 0 ? m.E[i] : m.F[i];
                const mat& Y = e == 0 ? m.E[j] : m.F[j];
                std::vector<mat> pw{id};
                for (int k = 1; k <= p; ++k) pw.push_back(pw.back() * X);
                mat s(m.dim(), m.dim());
                for (int k = 0; k <= p; ++k) {
                    scalar cf = ctx.qbinom(p, k, rs.d(i));
                    if (k % 2) cf = -cf;
                    s += (pw[p - k] * Y * pw[k]).scaled(cf);
                }
                if (!s.is_zero())
                    bad.push_back(std::string(e == 0 ? "Serre E" : "Serre F") + std::to_string(i + 1) +
                                  std::to_string(j + 1));
            }
        }
    }
    return bad;
}

mat highest_weight_vectors(const weight_module& m, const weight& lambda) {
    std::vector<size_t> idx;
    for (size_t b = 0; b < m.dim(); ++b)
        if (m.wts[b] == lambda) idx.push_back(b);
    if (idx.empty()) return mat(m.dim(), 0);
    std::vector<size_t> all(m.dim());
    std::iota(all.begin(), all.end(), 0);
    mat stack(0, idx.size());
    for (int i = 0; i < m.rank(); ++i)
        if (m.active[i]) stack = stack.vcat(m.E[i].block(all, idx));
    mat k = stack.rows() ? kernel(stack) : mat::identity(idx.size());
    mat out(m.dim(), k.cols());
    for (size_t c = 0; c < k.cols(); ++c)
        for (size_t r = 0; r < idx.size(); ++r) out(idx[r], c) = k(r, c);
    return out;
}

// ---------------------------------------------------------------------------

groth groth::operator+(const groth& o) const {
    groth r = *this;
    for (const auto& [w, k] : o.m) r.m[w] += k;
    for (auto it = r.m.begin(); it != r.m.end();) it = it->second == 0 ? r.m.erase(it) : std::next(it);
    return r;
}

groth groth::operator-(const groth& o) const {
    groth neg;
    for (const auto& [w, k] : o.m) neg.m[w] = -k;
    return *this + neg;
}

bool groth::operator==(const groth& o) const {
    groth d = *this - o;
    return d.m.empty();
}

long groth::dim(const root_system& rs, const std::vector<bool>& active) const {
    long s = 0;
    for (const auto& [w, k] : m) s += k * weyl_dimension(rs, w, active);
    return s;
}

std::string groth::str() const {
    if (m.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, k] : m) {
        os << (first ? "" : " + ");
        first = false;
        if (k != 1) os << k << "*";
        os << "V" << weight_str(w);
    }
    return os.str();
}

bool is_dominant_for(const weight& w, const std::vector<bool>& active) {
    for (size_t i = 0; i < w.size(); ++i)
        if (active[i] && w[i] < 0) return false;
    return true;
}

namespace {
bool supported(const root& r, const std::vector<bool>& active) {
    for (size_t i = 0; i < r.coeffs.size(); ++i)
        if (r.coeffs[i] && !active[i]) return false;
    return true;
}
}  // namespace

long weyl_dimension(const root_system& rs, const weight& lambda, const std::vector<bool>& active) {
    rat p = 1;
    const weight lr = lambda + rs.rho();
    for (const auto& b : rs.positive_roots())
        if (supported(b, active)) p *= rs.form(lr, b.w) / rs.form(rs.rho(), b.w);
    p.canonicalize();
    if (p.get_den() != 1) fail("InternalError", "Weyl dimension not integral");
    return p.get_num().get_si();
}

rat casimir_value(const root_system& rs, const weight& lambda, const std::vector<bool>& active) {
    weight two_rho(rs.rank(), 0);
    for (const auto& b : rs.positive_roots())
        if (supported(b, active)) two_rho = two_rho + b.w;
    return rs.form(lambda, lambda + two_rho);
}

groth decompose(const weight_module& m) {
    groth g;
    for (const auto& [w, idx] : m.weight_spaces()) {
        if (!is_dominant_for(w, m.active)) continue;
        const long k = static_cast<long>(highest_weight_vectors(m, w).cols());
        if (k) g.m[w] = k;
    }
    if (g.dim(*m.rs, m.active) != static_cast<long>(m.dim()))
        fail("InconsistentDecomposition", "multiplicities do not add up to the dimension");
    return g;
}

groth decompose_subspace(const weight_module& m, const mat& basis) {
    groth g;
    std::vector<size_t> allc(basis.cols());
    std::iota(allc.begin(), allc.end(), 0);
    std::vector<size_t> all(m.dim());
    std::iota(all.begin(), all.end(), 0);
    for (const auto& [w, idx] : m.weight_spaces()) {
        if (!is_dominant_for(w, m.active)) continue;
        mat proj = column_basis(basis.block(idx, allc));
        if (proj.cols() == 0) continue;
        mat stack(0, proj.cols());
        for (int i = 0; i < m.rank(); ++i)
            if (m.active[i]) stack = stack.vcat(m.E[i].block(all, idx) * proj);
        const long k = static_cast<long>(stack.rows() ? kernel(stack).cols() : proj.cols());
        if (k) g.m[w] = k;
    }
    if (g.dim(*m.rs, m.active) != static_cast<long>(rank(basis)))
        fail("InconsistentDecomposition", "subspace multiplicities do not add up");
    return g;
}

std::vector<isotypic_part> isotypic_decomposition(const weight_module& m) {
    std::vector<isotypic_part> out;
    size_t total = 0;
    for (const auto& [w, idx] : m.weight_spaces()) {
        if (!is_dominant_for(w, m.active)) continue;
        mat h = highest_weight_vectors(m, w);
        if (h.cols() == 0) continue;
        std::vector<vec> gens;
        for (size_t c = 0; c < h.cols(); ++c) gens.push_back(h.col(c));
        submodule s = cyclic_submodule(m, gens);
        out.push_back({w, static_cast<long>(h.cols()), s.embedding});
        total += s.embedding.cols();
    }
    if (total != m.dim()) fail("InconsistentDecomposition", "isotypic parts do not span the module");
    return out;
}

// ---------------------------------------------------------------------------

namespace {

// Solve Σ_t L_t X R_t = 0 per equation group for X restricted to a pattern.
struct linear_matrix_system {
    size_t n, m;
    std::vector<std::pair<size_t, size_t>> unknowns;  // (a,b) positions, possibly shared
    std::vector<std::vector<std::pair<size_t, size_t>>> positions;  // per unknown, positions it fills
    std::vector<std::vector<std::pair<const mat*, const mat*>>> groups;
    std::vector<mat> owned;

    mat solve_kernel() const {
        std::vector<vec> rows;
        for (const auto& g : groups) {
            // result entry (r,c) = Σ_t Σ_{(a,b)} L(r,a) X(a,b) R(b,c)
            std::map<std::pair<size_t, size_t>, vec> eq;
            for (size_t u = 0; u < positions.size(); ++u)
                for (auto [a, b] : positions[u])
                    for (const auto& [L, R] : g)
                        for (size_t r = 0; r < L->rows(); ++r) {
                            const scalar& l = (*L)(r, a);
                            if (l.is_zero()) continue;
                            for (size_t c = 0; c < R->cols(); ++c) {
                                const scalar& x = (*R)(b, c);
                                if (x.is_zero()) continue;
                                auto& row = eq[{r, c}];
                                if (row.empty()) row.resize(positions.size());
                                row[u] += l * x;
                            }
                        }
            for (auto& [k, row] : eq) rows.push_back(std::move(row));
        }
        mat A(rows.size(), positions.size());
        for (size_t i = 0; i < rows.size(); ++i)
            for (size_t j = 0; j < positions.size(); ++j) A(i, j) = rows[i][j];
        return kernel(A);
    }

    mat assemble(const vec& sol) const {
        mat X(n, m);
        for (size_t u = 0; u < positions.size(); ++u)
            for (auto [a, b] : positions[u]) X(a, b) = sol[u];
        return X;
    }
};

}  // namespace

mat invariant_pairing(const weight_module& mneg, const weight_module& mpos) {
    mneg.check_compatible(mpos);
    linear_matrix_system sys;
    sys.n = mneg.dim();
    sys.m = mpos.dim();
    for (size_t a = 0; a < sys.n; ++a)
        for (size_t b = 0; b < sys.m; ++b)
            if (mneg.wts[a] + mpos.wts[b] == weight(mneg.rank(), 0)) sys.positions.push_back({{a, b}});
    if (sys.positions.empty()) fail("NoInvariantPairing", "no weight-compatible entries");
    const size_t G = mneg.rank();
    sys.owned.reserve(8 * G);
    for (size_t i = 0; i < G; ++i) {
        if (!mneg.active[i]) continue;
        const weight al = mneg.rs->simple_root(i);
        sys.owned.push_back(mneg.E[i].transpose());
        const mat* Et = &sys.owned.back();
        sys.owned.push_back(mat::identity(sys.m));
        const mat* Im = &sys.owned.back();
        sys.owned.push_back(mneg.K(al));
        const mat* Kn = &sys.owned.back();
        sys.owned.push_back(mneg.F[i].transpose());
        const mat* Ft = &sys.owned.back();
        sys.owned.push_back(mpos.K(-al));
        const mat* Kpi = &sys.owned.back();
        sys.owned.push_back(mat::identity(sys.n));
        const mat* In = &sys.owned.back();
        // E^T P + K P E' = 0 ;  F^T P K'^{-1} + P F' = 0
        sys.groups.push_back({{Et, Im}, {Kn, &mpos.E[i]}});
        sys.groups.push_back({{Ft, Kpi}, {In, &mpos.F[i]}});
    }
    mat k = sys.solve_kernel();
    if (k.cols() == 0) fail("NoInvariantPairing", "module-map equations have no solution");
    if (k.cols() > 1) fail("PairingNotUnique", "solution space has dimension " + std::to_string(k.cols()));
    mat P = sys.assemble(k.col(0));
    // normalize on the highest vector of mpos (basis index 0)
    for (size_t a = 0; a < sys.n; ++a)
        if (!P(a, 0).is_zero()) return P.scaled(P(a, 0).inv());
    fail("NoInvariantPairing", "pairing degenerate on the highest vector");
}

std::vector<mat> invariant_forms(const weight_module& m) {
    linear_matrix_system sys;
    sys.n = sys.m = m.dim();
    for (size_t a = 0; a < m.dim(); ++a)
        for (size_t b = a; b < m.dim(); ++b)
            if (m.wts[a] == m.wts[b]) {
                if (a == b)
                    sys.positions.push_back({{a, a}});
                else
                    sys.positions.push_back({{a, b}, {b, a}});
            }
    sys.owned.reserve(8 * m.rank());
    const mat I = mat::identity(m.dim());
    for (int i = 0; i < m.rank(); ++i) {
        if (!m.active[i]) continue;
        const weight al = m.rs->simple_root(i);
        sys.owned.push_back(m.E[i].transpose());
        const mat* Et = &sys.owned.back();
        sys.owned.push_back(-(m.K(al) * m.F[i]));
        const mat* mKF = &sys.owned.back();
        sys.owned.push_back(m.F[i].transpose());
        const mat* Ft = &sys.owned.back();
        sys.owned.push_back(-(m.E[i] * m.K(-al)));
        const mat* mEK = &sys.owned.back();
        sys.owned.push_back(I);
        const mat* Ip = &sys.owned.back();
        // E^T G - G K F = 0 ; F^T G - G E K^{-1} = 0
        sys.groups.push_back({{Et, Ip}, {Ip, mKF}});
        sys.groups.push_back({{Ft, Ip}, {Ip, mEK}});
    }
    mat k = sys.solve_kernel();
    std::vector<mat> out;
    for (size_t c = 0; c < k.cols(); ++c) out.push_back(sys.assemble(k.col(c)));
    return out;
}

mat invariant_inner_product(const weight_module& m, const scalar& scale) {
    auto forms = invariant_forms(m);
    if (forms.empty()) fail("NoInvariantForm", "no invariant symmetric form");
    if (forms.size() > 1) fail("NoInvariantForm", "module is not simple; scale per isotypic block");
    const scalar& g00 = forms[0](0, 0);
    if (g00.is_zero()) fail("NoInvariantForm", "form vanishes on the highest vector");
    return forms[0].scaled(scale / g00);
}

bool positive_definite_at(const mat& g, const scalar_context& ctx, double q0) {
    const size_t n = g.rows();
    std::vector<double> a(n * n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) a[i * n + j] = ctx.specialize(g(i, j), q0);
    for (size_t j = 0; j < n; ++j) {
        double d = a[j * n + j];
        for (size_t k = 0; k < j; ++k) d -= a[j * n + k] * a[j * n + k];
        if (!(d > 1e-14)) return false;
        const double l = std::sqrt(d);
        a[j * n + j] = l;
        for (size_t i = j + 1; i < n; ++i) {
            double s = a[i * n + j];
            for (size_t k = 0; k < j; ++k) s -= a[i * n + k] * a[j * n + k];
            a[i * n + j] = s / l;
        }
    }
    return true;
}

bool probe_equal(const std::vector<weight_module>& probes, const element& a, const element& b) {
    const element d = a - b;
    for (const auto& p : probes)
        if (!p.act(d).is_zero()) return false;
    return true;
}

std::vector<weight_module> probe_family(rs_ptr rs, bool with_tensors) {
    std::vector<weight_module> fund;
    for (int i = 0; i < rs->rank(); ++i) {
        try {
            fund.push_back(simple_module(rs, rs->fundamental(i)));
        } catch (const error& e) {
            if (e.kind() != "UnreachableWeight") throw;
        }
    }
    std::vector<weight_module> out = fund;
    if (with_tensors)
        for (size_t i = 0; i < fund.size(); ++i)
            for (size_t j = i; j < fund.size(); ++j) out.push_back(tensor(fund[i], fund[j]));
    return out;
}

namespace {

// probe entries (r, c) whose weight difference is ±β
std::vector<std::pair<size_t, std::pair<size_t, size_t>>> probe_positions(const std::vector<weight_module>& probes,
                                                                          const weight& shift) {
    std::vector<std::pair<size_t, std::pair<size_t, size_t>>> out;
    for (size_t p = 0; p < probes.size(); ++p)
        for (size_t r = 0; r < probes[p].dim(); ++r)
            for (size_t c = 0; c < probes[p].dim(); ++c)
                if (probes[p].wts[r] - probes[p].wts[c] == shift) out.push_back({p, {r, c}});
    return out;
}

}  // namespace

element probe_normal_form(const std::vector<weight_module>& probes, const element& x,
                          const std::vector<int>& coeffs, gen::kind_t kind) {
    if (probes.empty()) fail("ProbeUnderdetermined", "empty probe family");
    const auto& rs = *probes[0].rs;
    weight beta(rs.rank(), 0);
    std::vector<int> letters;
    for (int i = 0; i < rs.rank(); ++i) {
        beta = beta + coeffs[i] * rs.simple_root(i);
        for (int k = 0; k < coeffs[i]; ++k) letters.push_back(i);
    }
    const auto pos = probe_positions(probes, kind == gen::E ? beta : -beta);
    auto image = [&](const element& y) {
        std::vector<mat> m;
        for (const auto& p : probes) m.push_back(p.act(y));
        vec v(pos.size());
        for (size_t t = 0; t < pos.size(); ++t) v[t] = m[pos[t].first](pos[t].second.first, pos[t].second.second);
        return v;
    };
    span_builder sb(pos.size());
    std::vector<element> words;
    std::sort(letters.begin(), letters.end());
    do {
        element w(scalar(1));
        for (int i : letters) w = w * (kind == gen::E ? element::e(i) : element::f(i));
        if (sb.add(image(w))) words.push_back(w);
    } while (std::next_permutation(letters.begin(), letters.end()));
    const vec c = sb.coords(image(x));
    element out;
    for (size_t k = 0; k < words.size(); ++k)
        if (!c[k].is_zero()) out += words[k].scaled(c[k]);
    return out;
}

std::vector<element> probe_root_vectors(const std::vector<weight_module>& probes, const std::vector<int>& word,
                                        gen::kind_t kind) {
    if (probes.empty()) fail("ProbeUnderdetermined", "empty probe family");
    const auto& rs = *probes[0].rs;
    word_roots(rs, word);  // NotReduced check
    uq U(probes[0].rs);
    std::vector<element> out;
    for (size_t k = 0; k < word.size(); ++k) {
        element x = kind == gen::E ? element::e(word[k]) : element::f(word[k]);
        weight b = rs.simple_root(word[k]);
        for (size_t m = k; m-- > 0;) {
            b = rs.reflect(word[m], b);
            std::vector<int> co;
            for (const auto& r : rs.root_coords(b)) co.push_back(static_cast<int>(r.get_num().get_si()));
            x = probe_normal_form(probes, U.braid(word[m], x), co, kind);
        }
        out.push_back(std::move(x));
    }
    return out;
}

std::string mat_render(const mat& m, const scalar_context& ctx) {
    std::ostringstream os;
    for (size_t i = 0; i < m.rows(); ++i) {
        os << "[";
        for (size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << ctx.pretty(m(i, j));
        os << "]\n";
    }
    return os.str();
}

}  // namespace qcl
