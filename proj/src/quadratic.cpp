#include "qcl/quadratic.hpp"

#include <functional>
#include <set>
#include <sstream>

#include "qcl/errors.hpp"

namespace qcl {

namespace {

size_t ipow(size_t d, int n) {
    size_t s = 1;
    for (int i = 0; i < n; ++i) {
        s *= d;
        if (s > max_tensor_dim) fail("DegreeTooLarge", "dim V^n exceeds " + std::to_string(max_tensor_dim));
    }
    return s;
}

mat adjacent_stack(const weight_module& v, int n, int sign) {
    const size_t d = v.dim();
    ipow(d, n);
    const mat s = commutor(v, v);
    const mat op = s + mat::identity(d * d).scaled(scalar(sign));
    mat stack(0, ipow(d, n));
    for (int j = 0; j + 2 <= n; ++j)
        stack = stack.vcat(kron(kron(mat::identity(ipow(d, j)), op), mat::identity(ipow(d, n - 2 - j))));
    return stack;
}

}  // namespace

mat sym_square(const weight_module& v) {
    const size_t n = v.dim() * v.dim();
    return kernel(commutor(v, v) - mat::identity(n));
}

mat ext_square(const weight_module& v) {
    const size_t n = v.dim() * v.dim();
    return kernel(commutor(v, v) + mat::identity(n));
}

mat symmetric_tensors(const weight_module& v, int n) {
    if (n < 2) fail("InvalidDegree", "need n >= 2");
    return kernel(adjacent_stack(v, n, -1));
}

mat antisymmetric_tensors(const weight_module& v, int n) {
    if (n < 2) fail("InvalidDegree", "need n >= 2");
    return kernel(adjacent_stack(v, n, 1));
}

quadratic_algebra quantum_symmetric_algebra(const weight_module& v) {
    return {v, ext_square(v), qa_kind::symmetric};
}

quadratic_algebra quantum_exterior_algebra(const weight_module& v) {
    return {v, sym_square(v), qa_kind::exterior};
}

quadratic_algebra quadratic_dual(const quadratic_algebra& a) {
    const size_t d = a.v.dim();
    // ⟨f_i ⊗ f_j, e_k ⊗ e_l⟩ = δ_jk δ_il, i.e. the flip
    const mat pairing = flip(d, d);
    quadratic_algebra out;
    out.v = dual(a.v);
    out.relations = annihilator(pairing * a.relations);
    out.kind = a.kind == qa_kind::symmetric ? qa_kind::exterior
               : a.kind == qa_kind::exterior ? qa_kind::symmetric
                                              : qa_kind::general;
    return out;
}

mat ideal_component(const quadratic_algebra& a, int n) {
    const size_t d = a.v.dim();
    const size_t N = ipow(d, n);
    mat J(N, 0);
    for (int j = 0; j + 2 <= n; ++j)
        J = J.hcat(kron(kron(mat::identity(ipow(d, j)), a.relations), mat::identity(ipow(d, n - 2 - j))));
    return J;
}

bool in_ideal(const quadratic_algebra& a, int n, const vec& x) {
    const mat J = ideal_component(a, n);
    return rank(J.hcat(mat::from_columns({x}, x.size()))) == rank(J);
}

long graded_dimension(const quadratic_algebra& a, int n) {
    const long d = static_cast<long>(a.v.dim());
    if (n == 0) return 1;
    if (n == 1) return d;
    const size_t N = ipow(a.v.dim(), n);
    return static_cast<long>(N - rank(ideal_component(a, n)));
}

std::vector<long> hilbert_series(const quadratic_algebra& a, int d) {
    std::vector<long> h;
    for (int n = 0; n <= d; ++n) h.push_back(graded_dimension(a, n));
    return h;
}

long classical_dimension(qa_kind k, long dim_v, int n) {
    // C(m, n) with m = dim + n - 1 (symmetric) or dim (exterior)
    const long m = k == qa_kind::exterior ? dim_v : dim_v + n - 1;
    if (n < 0 || n > m) return 0;
    long c = 1;
    for (long i = 1; i <= n; ++i) c = c * (m - n + i) / i;
    return c;
}

flatness_report is_flat(const quadratic_algebra& a, int d) {
    if (a.kind == qa_kind::general) fail("InvalidInput", "flatness needs a symmetric or exterior algebra");
    rewrite_to_ordered(a);  // NonGeneric propagates
    flatness_report r;
    r.quantum = hilbert_series(a, d);
    for (int n = 0; n <= d; ++n) {
        r.classical.push_back(classical_dimension(a.kind, static_cast<long>(a.v.dim()), n));
        if (r.quantum[n] != r.classical[n] && r.witness_degree < 0) {
            r.flat = false;
            r.witness_degree = n;
        }
    }
    r.pbw_certified = r.flat && d >= 3;
    return r;
}

bool is_ordered_pair(qa_kind k, size_t i, size_t j) { return k == qa_kind::exterior ? i < j : i <= j; }

rewrite_table rewrite_to_ordered(const quadratic_algebra& a) {
    const size_t d = a.v.dim();
    rewrite_table t;
    t.dim = d;
    t.kind = a.kind;
    std::vector<size_t> dis, ord;
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) (is_ordered_pair(a.kind, i, j) ? ord : dis).push_back(i * d + j);
    if (dis.size() != a.relations.cols())
        fail("NonGeneric", "relation count differs from the number of disordered monomials");
    if (dis.empty()) return t;
    std::vector<size_t> cols(a.relations.cols());
    for (size_t c = 0; c < cols.size(); ++c) cols[c] = c;
    mat rd = a.relations.block(dis, cols);
    if (rank(rd) != dis.size()) fail("NonGeneric", "disordered monomials are not expressible");
    const mat normal = a.relations * inverse(rd);  // column k: e_{dis[k]} + ordered part
    for (size_t k = 0; k < dis.size(); ++k) {
        auto& rule = t.rules[{dis[k] / d, dis[k] % d}];
        for (size_t o : ord)
            if (!normal(o, k).is_zero()) rule[{o / d, o % d}] = -normal(o, k);
    }
    return t;
}

std::string term_str(const scalar& c, const std::string& mono, const scalar_context& ctx, bool first) {
    std::string cs = ctx.pretty(c);
    const bool sum = cs.find(" + ") != std::string::npos || cs.find(" - ") != std::string::npos;
    bool neg = false;
    if (cs[0] == '-' && !sum && cs.find('/') == std::string::npos) {
        neg = true;
        cs = cs.substr(1);
    }
    if (sum || (cs.find('/') != std::string::npos && cs[0] != '(')) cs = "(" + cs + ")";
    std::string out = first ? (neg ? "-" : "") : (neg ? " - " : " + ");
    return out + (cs == "1" ? mono : cs + "*" + mono);
}

std::string render_rule(const rewrite_table& t, const std::pair<size_t, size_t>& lhs,
                        const std::vector<std::string>& names, const scalar_context& ctx) {
    std::ostringstream os;
    os << names[lhs.first] << "*" << names[lhs.second] << " = ";
    auto it = t.rules.find(lhs);
    if (it == t.rules.end() || it->second.empty()) return os.str() + "0";
    bool first = true;
    for (const auto& [m, c] : it->second) {
        os << term_str(c, names[m.first] + "*" + names[m.second], ctx, first);
        first = false;
    }
    return os.str();
}

polynomial reduce_to_ordered(const rewrite_table& t, const monomial& m) {
    std::map<monomial, polynomial> memo;
    std::set<monomial> active;
    std::function<const polynomial&(const monomial&)> go = [&](const monomial& w) -> const polynomial& {
        auto it = memo.find(w);
        if (it != memo.end()) return it->second;
        if (!active.insert(w).second) fail("RewriteDiverges", "rewriting revisits a monomial");
        polynomial out;
        size_t p = 0;
        while (p + 1 < w.size() && is_ordered_pair(t.kind, w[p], w[p + 1])) ++p;
        if (p + 1 >= w.size()) {
            out[w] = scalar(1);
        } else {
            auto rit = t.rules.find({w[p], w[p + 1]});
            if (rit != t.rules.end())
                for (const auto& [o, c] : rit->second) {
                    monomial nw = w;
                    nw[p] = o.first;
                    nw[p + 1] = o.second;
                    for (const auto& [mm, cc] : go(nw)) {
                        scalar& slot = out[mm];
                        slot += c * cc;
                        if (slot.is_zero()) out.erase(mm);
                    }
                }
        }
        active.erase(w);
        return memo.emplace(w, std::move(out)).first->second;
    };
    return go(m);
}

std::vector<std::pair<monomial, polynomial>> overlap_relations(const rewrite_table& t) {
    std::vector<std::pair<monomial, polynomial>> out;
    const size_t d = t.dim;
    auto apply = [&](const monomial& w, size_t p) {
        polynomial r;
        auto rit = t.rules.find({w[p], w[p + 1]});
        if (rit == t.rules.end()) return r;
        for (const auto& [o, c] : rit->second) {
            monomial nw = w;
            nw[p] = o.first;
            nw[p + 1] = o.second;
            for (const auto& [mm, cc] : reduce_to_ordered(t, nw)) {
                scalar& slot = r[mm];
                slot += c * cc;
                if (slot.is_zero()) r.erase(mm);
            }
        }
        return r;
    };
    for (size_t a = 0; a < d; ++a)
        for (size_t b = 0; b < d; ++b)
            for (size_t c = 0; c < d; ++c) {
                if (is_ordered_pair(t.kind, a, b) || is_ordered_pair(t.kind, b, c)) continue;
                const monomial w{a, b, c};
                polynomial diff = apply(w, 0);
                for (const auto& [mm, cc] : apply(w, 1)) {
                    scalar& slot = diff[mm];
                    slot -= cc;
                    if (slot.is_zero()) diff.erase(mm);
                }
                if (diff.empty()) continue;
                const scalar lead = diff.begin()->second.inv();
                for (auto& [mm, cc] : diff) cc *= lead;
                out.emplace_back(w, std::move(diff));
            }
    return out;
}

std::string render_polynomial(const polynomial& p, const std::vector<std::string>& names,
                              const scalar_context& ctx) {
    if (p.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : p) {
        std::string mono;
        for (size_t k = 0; k < m.size(); ++k) mono += (k ? "*" : "") + names[m[k]];
        os << term_str(c, mono, ctx, first);
        first = false;
    }
    return os.str();
}

// ---------------------------------------------------------------------------

groth decompose_character(rs_ptr rs, std::map<weight, long> ch) {
    groth g;
    std::map<weight, std::map<weight, long>> simple_chars;
    while (true) {
        for (auto it = ch.begin(); it != ch.end();) it = it->second == 0 ? ch.erase(it) : std::next(it);
        if (ch.empty()) break;
        // a maximal weight maximizes (λ, ρ)
        auto best = ch.begin();
        for (auto it = ch.begin(); it != ch.end(); ++it)
            if (rs->form(it->first, rs->rho()) > rs->form(best->first, rs->rho())) best = it;
        const weight lam = best->first;
        const long m = best->second;
        if (!rs->is_dominant(lam) || m < 0) fail("InconsistentDecomposition", "character is not effective");
        auto sit = simple_chars.find(lam);
        if (sit == simple_chars.end()) {
            std::map<weight, long> c;
            for (const auto& w : simple_module(rs, lam).wts) ++c[w];
            sit = simple_chars.emplace(lam, std::move(c)).first;
        }
        for (const auto& [w, k] : sit->second) ch[w] -= m * k;
        g.m[lam] += m;
    }
    return g;
}

groth classical_power_class(const weight_module& v, int n, bool symmetric) {
    if (std::find(v.active.begin(), v.active.end(), false) != v.active.end())
        fail("UnsupportedInput", "classical powers need a module over the full algebra");
    std::map<weight, long> ch;
    const size_t d = v.dim();
    std::vector<size_t> idx;
    std::function<void(size_t)> rec = [&](size_t start) {
        if (static_cast<int>(idx.size()) == n) {
            weight w(v.rank(), 0);
            for (size_t i : idx) w = w + v.wts[i];
            ++ch[w];
            return;
        }
        for (size_t i = start; i < d; ++i) {
            idx.push_back(i);
            rec(symmetric ? i : i + 1);
            idx.pop_back();
        }
    };
    rec(0);
    return decompose_character(v.rs, ch);
}

collapse_report collapse_deficit_degree3(const weight_module& v) {
    collapse_report r;
    const weight_module v3 = tensor_power(v, 3);
    const mat s3 = symmetric_tensors(v, 3);
    const mat l3 = antisymmetric_tensors(v, 3);
    r.dim_sym_q = static_cast<long>(s3.cols());
    r.dim_ext_q = static_cast<long>(l3.cols());
    r.sym_q = decompose_subspace(v3, s3);
    r.ext_q = decompose_subspace(v3, l3);
    r.sym_cl = classical_power_class(v, 3, true);
    r.ext_cl = classical_power_class(v, 3, false);
    r.equal = (r.sym_q - r.ext_q) == (r.sym_cl - r.ext_cl);
    return r;
}

}  // namespace qcl
