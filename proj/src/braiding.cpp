#include "qcl/braiding.hpp"

#include <mutex>
#include <numeric>

#include "qcl/errors.hpp"

namespace qcl {

namespace {

struct root_vectors {
    std::vector<element> e, f;
    std::vector<weight> roots;
};

const root_vectors& cached_root_vectors(const rs_ptr& rs, const std::vector<int>& word) {
    static std::mutex mu;
    static std::map<std::pair<std::string, std::vector<int>>, root_vectors> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(rs->label(), word);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    const auto probes = probe_family(rs);
    root_vectors rv;
    rv.roots = word_roots(*rs, word);
    rv.e = probe_root_vectors(probes, word, gen::E);
    rv.f = probe_root_vectors(probes, word, gen::F);
    return cache.emplace(key, std::move(rv)).first->second;
}

}  // namespace

std::vector<int> active_longest_word(const weight_module& m) {
    return levi_longest_word(*m.rs, m.active);
}

mat flip(size_t du, size_t dv) {
    mat t(du * dv, du * dv);
    for (size_t a = 0; a < du; ++a)
        for (size_t b = 0; b < dv; ++b) t(b * du + a, a * dv + b) = scalar(1);
    return t;
}

mat braiding(const weight_module& U, const weight_module& V) {
    U.check_compatible(V);
    const auto& rs = *U.rs;
    const auto& ctx = U.ctx;
    const auto word = active_longest_word(U);
    const auto& rv = cached_root_vectors(U.rs, word);
    const size_t n = U.dim() * V.dim();
    mat R = mat::identity(n);
    // written left to right as β_1 … β_d, so β_d acts first; the other order
    // is not a module map with these T_i and this coproduct
    for (size_t j = word.size(); j-- > 0;) {
        const mat Fu = U.act(rv.f[j]);
        const mat Ev = V.act(rv.e[j]);
        const rat half = rs.form(rv.roots[j], rv.roots[j]) / 2;
        const long dbeta = half.get_num().get_si() / half.get_den().get_si();
        const scalar nb = ctx.qpow(dbeta);
        const scalar c1 = scalar(1) - nb.pow(-2);
        mat X = mat::identity(n);
        mat Fp = mat::identity(U.dim()), Ep = mat::identity(V.dim());
        for (int t = 1;; ++t) {
            Fp = Fp * Fu;
            Ep = Ep * Ev;
            if (Fp.is_zero() || Ep.is_zero()) break;
            scalar c = c1.pow(t) * ctx.qfact(t, dbeta).inv() * nb.pow(static_cast<long>(t) * (t + 1) / 2);
            X += kron(Fp, Ep).scaled(c);
        }
        R = X * R;
    }
    // B(u ⊗ v) = ν^{(wt u, wt v)} u ⊗ v
    mat B(n, n);
    for (size_t a = 0; a < U.dim(); ++a)
        for (size_t b = 0; b < V.dim(); ++b) B(a * V.dim() + b, a * V.dim() + b) = rs.qform(U.wts[a], V.wts[b]);
    return flip(U.dim(), V.dim()) * (B * R);
}

namespace {

rat casimir_of(const weight_module& m, const weight& l) { return casimir_value(*m.rs, l, m.active); }

weight require_highest(const weight_module& m) {
    if (!m.highest) fail("NotSimple", "module " + m.label + " is not marked simple");
    return *m.highest;
}

}  // namespace

std::vector<double_braiding_entry> double_braiding_eigendata(const weight_module& U, const weight_module& V) {
    const weight l1 = require_highest(U), l2 = require_highest(V);
    const rat c1 = casimir_of(U, l1), c2 = casimir_of(V, l2);
    std::vector<double_braiding_entry> out;
    for (const auto& [mu, mult] : decompose(tensor(U, V)).m) {
        rat e = casimir_of(U, mu) - c1 - c2;
        e.canonicalize();
        for (const auto& o : out)
            if (o.exponent == e) fail("EigenvalueCollision", "constituents share a double-braiding eigenvalue");
        out.push_back({mu, e, U.ctx.qpow(e)});
    }
    return out;
}

isotypic_projectors projectors(const weight_module& m) {
    isotypic_projectors out;
    if (m.highest) {
        out.lambdas.push_back(*m.highest);
        out.proj.push_back(mat::identity(m.dim()));
        return out;
    }
    auto parts = isotypic_decomposition(m);
    mat B(m.dim(), 0);
    for (const auto& p : parts) B = B.hcat(p.basis);
    const mat Bi = inverse(B);
    std::vector<size_t> all(m.dim());
    std::iota(all.begin(), all.end(), 0);
    size_t off = 0;
    for (const auto& p : parts) {
        std::vector<size_t> idx(p.basis.cols());
        std::iota(idx.begin(), idx.end(), off);
        off += idx.size();
        out.lambdas.push_back(p.lambda);
        out.proj.push_back(p.basis * Bi.block(idx, all));
    }
    return out;
}

mat commutor(const weight_module& U, const weight_module& V) {
    const auto pu = projectors(U), pv = projectors(V);
    const weight_module UV = tensor(U, V);
    const auto pm = projectors(UV);
    mat A(UV.dim(), UV.dim());
    for (size_t a = 0; a < pu.lambdas.size(); ++a)
        for (size_t b = 0; b < pv.lambdas.size(); ++b) {
            const mat Pab = kron(pu.proj[a], pv.proj[b]);
            const rat cab = casimir_of(U, pu.lambdas[a]) + casimir_of(U, pv.lambdas[b]);
            for (size_t k = 0; k < pm.lambdas.size(); ++k) {
                mat P = Pab * pm.proj[k];
                if (P.is_zero()) continue;
                rat ex = (cab - casimir_of(U, pm.lambdas[k])) / 2;
                A += P.scaled(U.ctx.qpow(ex));
            }
        }
    return braiding(U, V) * A;
}

mat commutor_lagrange(const weight_module& U, const weight_module& V) {
    const weight l1 = require_highest(U), l2 = require_highest(V);
    const rat c1 = casimir_of(U, l1), c2 = casimir_of(V, l2);
    std::vector<rat> ex;  // distinct e_μ; coinciding ones share the A-scalar too
    for (const auto& [mu, mult] : decompose(tensor(U, V)).m) {
        rat e = casimir_of(U, mu) - c1 - c2;
        e.canonicalize();
        if (std::find(ex.begin(), ex.end(), e) == ex.end()) ex.push_back(e);
    }
    const mat Ruv = braiding(U, V);
    const mat Q = braiding(V, U) * Ruv;
    const size_t n = Q.rows();
    const mat I = mat::identity(n);
    mat A(n, n);
    for (const auto& e : ex) {
        mat term = I.scaled(U.ctx.qpow(-e / 2));
        for (const auto& f : ex) {
            if (f == e) continue;
            const scalar den = U.ctx.qpow(e) - U.ctx.qpow(f);
            term = term * (Q - I.scaled(U.ctx.qpow(f))).scaled(den.inv());
        }
        A += term;
    }
    return Ruv * A;
}

// ---------------------------------------------------------------------------

cactus_action::cactus_action(weight_module v, int n) : v_(std::move(v)), n_(n) {
    if (n < 2) fail("IndexOutOfRange", "cactus group needs n >= 2");
}

const weight_module& cactus_action::power(int k) {
    auto it = powers_.find(k);
    if (it != powers_.end()) return it->second;
    weight_module m = k == 1 ? v_ : tensor(power(k - 1), v_);
    return powers_.emplace(k, std::move(m)).first->second;
}

const mat& cactus_action::sigma_block(int k) {
    auto it = sigma_.find(k);
    if (it != sigma_.end()) return it->second;
    return sigma_.emplace(k, commutor(v_, power(k))).first->second;
}

const mat& cactus_action::generator(int p, int t) {
    if (p < 1 || t > n_ || p >= t) fail("IndexOutOfRange", "need 1 <= p < t <= n");
    auto key = std::make_pair(p, t);
    auto it = gens_.find(key);
    if (it != gens_.end()) return it->second;
    const size_t d = v_.dim();
    auto id_pow = [&](int k) {
        size_t s = 1;
        for (int i = 0; i < k; ++i) s *= d;
        return mat::identity(s);
    };
    // σ_{p,p,t}: move slot p past slots p+1..t
    mat sig = kron(kron(id_pow(p - 1), sigma_block(t - p)), id_pow(n_ - t));
    mat g = (t == p + 1) ? sig : sig * generator(p + 1, t);
    return gens_.emplace(key, std::move(g)).first->second;
}

mat cactus_generator(const weight_module& v, int n, int p, int t) {
    cactus_action c(v, n);
    return c.generator(p, t);
}

}  // namespace qcl
