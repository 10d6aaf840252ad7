#include "qcl/clifford.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <sstream>

#include "qcl/errors.hpp"

namespace qcl {

namespace {

size_t ipow(size_t d, int n) {
    size_t s = 1;
    for (int i = 0; i < n; ++i) s *= d;
    return s;
}

monomial digits(size_t t, size_t base, int k) {
    monomial m(k);
    for (int p = k; p-- > 0;) {
        m[p] = t % base;
        t /= base;
    }
    return m;
}

int find_weight(const std::vector<weight>& ws, const weight& w) {
    auto it = std::find(ws.begin(), ws.end(), w);
    return it == ws.end() ? -1 : static_cast<int>(it - ws.begin());
}

// the basis vector killed by every active E (unique for the simple modules here)
weight top_weight(const weight_module& m) {
    std::optional<weight> top;
    for (size_t b = 0; b < m.dim(); ++b) {
        bool killed = true;
        for (int j = 0; j < m.rank() && killed; ++j)
            if (m.active[j])
                for (size_t r = 0; r < m.dim(); ++r)
                    if (!m.E[j](r, b).is_zero()) killed = false;
        if (killed) {
            if (top) fail("NotSimple", "more than one highest weight vector");
            top = m.wts[b];
        }
    }
    if (!top) fail("NotSimple", "no highest weight vector");
    return *top;
}

}  // namespace

std::string cominuscule_context::label() const {
    return rs->label() + " s=" + std::to_string(par.s + 1);
}

vec probe_solve(const std::vector<weight_module>& probes, const element& target,
                const std::vector<element>& basis) {
    const size_t nb = basis.size();
    std::vector<vec> rows;
    vec rhs;
    for (const auto& p : probes) {
        const mat t = p.act(target);
        std::vector<mat> bm;
        for (const auto& b : basis) bm.push_back(p.act(b));
        for (size_t r = 0; r < p.dim(); ++r)
            for (size_t c = 0; c < p.dim(); ++c) {
                bool any = !t(r, c).is_zero();
                for (const auto& m : bm) any = any || !m(r, c).is_zero();
                if (!any) continue;
                vec row(nb);
                for (size_t k = 0; k < nb; ++k) row[k] = bm[k](r, c);
                rows.push_back(std::move(row));
                rhs.push_back(t(r, c));
            }
    }
    if (nb == 0) {
        for (const auto& x : rhs)
            if (!x.is_zero()) fail("ProbeMismatch", "element is nonzero on the probes");
        return {};
    }
    mat A(rows.size(), nb), b(rows.size(), 1);
    for (size_t r = 0; r < rows.size(); ++r) {
        for (size_t k = 0; k < nb; ++k) A(r, k) = rows[r][k];
        b(r, 0) = rhs[r];
    }
    if (rank(A) < nb) fail("ProbeUnderdetermined", "probe family does not separate the candidates");
    auto x = solve(A, b);
    if (!x) fail("ProbeMismatch", "element is outside the candidate span");
    return x->col(0);
}

cominuscule_context build_context(char type, int rank, int s) {
    return build_context(build_root_system(type, rank), s);
}

cominuscule_context build_context(rs_ptr rs, int s) {
    cominuscule_context c;
    c.rs = rs;
    c.par = build_parabolic(rs, s, true);
    c.ctx = rs->context();
    const int n = rs->rank();
    c.levi.assign(n, true);
    c.levi[s] = false;
    const size_t N = c.par.xi.size();

    uq U(rs);
    const auto probes = probe_family(rs);
    const auto ev = probe_root_vectors(probes, c.par.full_word(), gen::E);
    c.e_xi.assign(ev.begin() + c.par.levi_word.size(), ev.end());

    // adjoint action of U_q(l) on span{E_ξ}, read off on probes
    weight_module ad(rs, c.par.xi, c.levi);
    for (int j = 0; j < n; ++j) {
        if (!c.levi[j]) continue;
        const weight al = rs->simple_root(j);
        for (size_t k = 0; k < N; ++k) {
            for (int sign : {1, -1}) {
                const element g = sign > 0 ? element::e(j) : element::f(j);
                const element a = U.adjoint(g, c.e_xi[k]);
                const int l = find_weight(c.par.xi, c.par.xi[k] + sign * al);
                if (l < 0) {
                    probe_solve(probes, a, {});
                    continue;
                }
                const scalar v = probe_solve(probes, a, {c.e_xi[l]})[0];
                (sign > 0 ? ad.E[j] : ad.F[j])(l, k) = v;
            }
        }
    }
    if (!relation_audit(ad).empty()) fail("ProbeMismatch", "adjoint action on the Schubert span is not a module");

    // the abstract picture: the α_s = −1 layer of the adjoint module
    const weight_module theta = restrict_algebra(simple_module(rs, rs->highest_root().w), c.levi);
    std::vector<size_t> layer;
    for (size_t b = 0; b < theta.dim(); ++b)
        if (rs->root_coords(theta.wts[b])[s] == -1) layer.push_back(b);
    c.u_minus_abstract = restrict_to(theta, layer);
    c.u_minus_abstract.label = "u-(abstract)";
    if (c.u_minus_abstract.dim() != N) fail("ProbeMismatch", "layer dimension differs from N");
    const weight_module up_abs = right_dual(c.u_minus_abstract);
    std::vector<size_t> p(N);
    for (size_t k = 0; k < N; ++k) {
        const int b = find_weight(up_abs.wts, c.par.xi[k]);
        if (b < 0) fail("ProbeMismatch", "weights of u- are not the negated radical roots");
        p[k] = b;
    }
    // x_k = r_k b_{p(k)} turns the abstract action into the adjoint one:
    // r_l ad(l,k) = r_k abs(p(l),p(k))
    std::vector<std::optional<scalar>> r(N);
    r[0] = scalar(1);
    std::deque<size_t> queue{0};
    while (!queue.empty()) {
        const size_t k = queue.front();
        queue.pop_front();
        for (int j = 0; j < n; ++j) {
            if (!c.levi[j]) continue;
            for (int which = 0; which < 2; ++which) {
                const mat& A = which ? ad.F[j] : ad.E[j];
                const mat& B = which ? up_abs.F[j] : up_abs.E[j];
                for (size_t l = 0; l < N; ++l) {
                    // from k to l, and back from l to k
                    if (!r[l] && !A(l, k).is_zero() && !B(p[l], p[k]).is_zero()) {
                        r[l] = *r[k] * B(p[l], p[k]) / A(l, k);
                        queue.push_back(l);
                    }
                    if (!r[l] && !A(k, l).is_zero() && !B(p[k], p[l]).is_zero()) {
                        r[l] = *r[k] * A(k, l) / B(p[k], p[l]);
                        queue.push_back(l);
                    }
                }
            }
        }
    }
    for (size_t k = 0; k < N; ++k) {
        if (!r[k]) fail("ProbeMismatch", "u+ is not connected under U_q(l)");
        c.rescale.push_back(*r[k]);
    }
    for (int j = 0; j < n; ++j) {
        if (!c.levi[j]) continue;
        for (int which = 0; which < 2; ++which) {
            const mat& A = which ? ad.F[j] : ad.E[j];
            const mat& B = which ? up_abs.F[j] : up_abs.E[j];
            for (size_t l = 0; l < N; ++l)
                for (size_t k = 0; k < N; ++k)
                    if (c.rescale[l] * A(l, k) != c.rescale[k] * B(p[l], p[k]))
                        fail("ProbeMismatch", "x_k -> E_xi_k does not intertwine");
        }
    }

    c.u_plus = ad;
    c.u_plus.label = "u+";
    c.u_plus.highest = top_weight(c.u_plus);
    c.u_minus = dual(c.u_plus);
    c.u_minus.label = "u-";
    c.u_minus.highest = top_weight(c.u_minus);

    const mat P = invariant_pairing(c.u_minus, c.u_plus);
    if (P != mat::identity(N).scaled(P(0, 0))) fail("ProbeMismatch", "dual bases are not paired by δ");
    const weight ws = rs->fundamental(s);
    const scalar qs = c.ctx.qpow(static_cast<long>(rs->d(s)));
    if (c.u_plus.K(ws) != mat::identity(N).scaled(qs) || c.u_minus.K(ws) != mat::identity(N).scaled(qs.inv()))
        fail("ProbeMismatch", "K_omega_s does not act by q_s^{±1}");
    return c;
}

std::vector<std::string> context_audit(const cominuscule_context& c) {
    std::vector<std::string> bad;
    const size_t N = c.par.xi.size();
    if (c.e_xi.size() != N || c.u_plus.dim() != N || c.u_minus.dim() != N || c.rescale.size() != N)
        return {"dimensions"};
    if (!relation_audit(c.u_plus).empty()) bad.push_back("u+ relations");
    if (!relation_audit(c.u_minus).empty()) bad.push_back("u- relations");
    if (!relation_audit(c.u_minus_abstract).empty()) bad.push_back("abstract u- relations");
    if (c.u_plus.wts != c.par.xi) bad.push_back("u+ weights");
    uq U(c.rs);
    const auto probes = probe_family(c.rs);
    auto intertwines = [&] {
        for (int j = 0; j < c.rs->rank(); ++j) {
            if (!c.levi[j]) continue;
            for (int which = 0; which < 2; ++which) {
                const element g = which ? element::f(j) : element::e(j);
                const mat& A = which ? c.u_plus.F[j] : c.u_plus.E[j];
                for (size_t k = 0; k < N; ++k) {
                    element image;
                    for (size_t l = 0; l < N; ++l)
                        if (!A(l, k).is_zero()) image += c.e_xi[l].scaled(A(l, k));
                    if (!probe_equal(probes, U.adjoint(g, c.e_xi[k]), image)) return false;
                }
            }
        }
        return true;
    };
    if (!intertwines()) bad.push_back("intertwiner");
    if (dual(c.u_plus).E != c.u_minus.E || dual(c.u_plus).F != c.u_minus.F) bad.push_back("u- is not the dual of u+");
    try {
        const mat P = invariant_pairing(c.u_minus, c.u_plus);
        if (P != mat::identity(N).scaled(P(0, 0))) bad.push_back("pairing");
    } catch (const error&) {
        bad.push_back("pairing");
    }
    return bad;
}

std::vector<schubert_relation> verify_schubert_quadratic(const cominuscule_context& c) {
    const auto probes = probe_family(c.rs);
    const size_t N = c.e_xi.size();
    std::vector<schubert_relation> out;
    for (size_t k = 0; k < N; ++k)
        for (size_t l = k + 1; l < N; ++l) {
            schubert_relation rel;
            rel.k = k;
            rel.l = l;
            rel.exponent = -c.rs->form(c.par.xi[k], c.par.xi[l]);
            const element lhs =
                c.e_xi[l] * c.e_xi[k] - (c.e_xi[k] * c.e_xi[l]).scaled(c.ctx.qpow(rel.exponent));
            std::vector<std::pair<size_t, size_t>> cand;
            std::vector<element> basis;
            const weight target = c.par.xi[k] + c.par.xi[l];
            for (size_t i = k + 1; i < l; ++i)
                for (size_t j = i; j < l; ++j)
                    if (c.par.xi[i] + c.par.xi[j] == target) {
                        cand.push_back({i, j});
                        basis.push_back(c.e_xi[i] * c.e_xi[j]);
                    }
            const vec x = probe_solve(probes, lhs, basis);
            for (size_t t = 0; t < cand.size(); ++t)
                if (!x[t].is_zero()) rel.coeffs[cand[t]] = x[t];
            out.push_back(std::move(rel));
        }
    return out;
}

// ---------------------------------------------------------------------------

std::vector<size_t> exterior_algebra_rep::in_degree(size_t k) const {
    std::vector<size_t> out;
    for (size_t a = 0; a < basis.size(); ++a)
        if (basis[a].size() == k) out.push_back(a);
    return out;
}

vec exterior_algebra_rep::multiply(const vec& a, const vec& b) const {
    vec out(dim());
    for (size_t i = 0; i < dim(); ++i) {
        if (a[i].is_zero()) continue;
        const vec t = left[i] * b;
        for (size_t j = 0; j < dim(); ++j)
            if (!t[j].is_zero()) out[j] += a[i] * t[j];
    }
    return out;
}

std::vector<std::string> exterior_algebra_rep::names() const {
    std::vector<std::string> out;
    for (size_t i = 0; i < N; ++i) out.push_back((plus ? "x" : "y") + std::to_string(i + 1));
    return out;
}

namespace {

std::string subset_str(const subset& J, const std::vector<std::string>& names, const char* sep) {
    std::string s;
    for (size_t k = 0; k < J.size(); ++k) s += (k ? sep : "") + names[J[k]];
    return s;
}

}  // namespace

std::string exterior_algebra_rep::element_str(const vec& a, const scalar_context& ctx) const {
    std::string out;
    bool first = true;
    const auto nm = names();
    for (size_t i = 0; i < dim(); ++i) {
        if (a[i].is_zero()) continue;
        if (basis[i].empty()) {
            std::string cs = ctx.pretty(a[i]);
            out += first ? cs : (cs[0] == '-' ? " - " + cs.substr(1) : " + " + cs);
        } else {
            out += term_str(a[i], subset_str(basis[i], nm, "^"), ctx, first);
        }
        first = false;
    }
    return first ? "0" : out;
}

exterior_algebra_rep exterior_algebra(const cominuscule_context& c, bool plus) {
    exterior_algebra_rep ext;
    ext.plus = plus;
    ext.v = plus ? c.u_plus : c.u_minus;
    ext.N = ext.v.dim();
    const auto qa = quantum_exterior_algebra(ext.v);
    ext.rules = rewrite_to_ordered(qa);
    // flatness where the tensor powers stay small
    for (int k = 2; k <= static_cast<int>(ext.N) && ipow(ext.N, k) <= 4096; ++k)
        if (graded_dimension(qa, k) != classical_dimension(qa_kind::exterior, static_cast<long>(ext.N), k))
            fail("NonFlat", "exterior algebra of " + ext.v.label + " is not flat in degree " + std::to_string(k));
    for (size_t k = 0; k <= ext.N; ++k) {
        std::vector<bool> pick(ext.N, false);
        std::fill(pick.begin(), pick.begin() + k, true);
        std::vector<subset> deg;
        do {
            subset J;
            for (size_t i = 0; i < ext.N; ++i)
                if (pick[i]) J.push_back(i);
            deg.push_back(J);
        } while (std::prev_permutation(pick.begin(), pick.end()));
        std::sort(deg.begin(), deg.end());
        for (auto& J : deg) {
            ext.index[J] = ext.basis.size();
            ext.basis.push_back(std::move(J));
        }
    }
    const size_t n = ext.dim();
    ext.left.assign(n, mat(n, n));
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b) {
            if (ext.basis[a].size() + ext.basis[b].size() > ext.N) {
                // still reduce: the product must vanish
                monomial m = ext.basis[a];
                m.insert(m.end(), ext.basis[b].begin(), ext.basis[b].end());
                if (!reduce_to_ordered(ext.rules, m).empty()) fail("NonFlat", "product above the top degree");
                continue;
            }
            monomial m = ext.basis[a];
            m.insert(m.end(), ext.basis[b].begin(), ext.basis[b].end());
            for (const auto& [mm, cc] : reduce_to_ordered(ext.rules, m)) {
                auto it = ext.index.find(mm);
                if (it == ext.index.end()) fail("NonGeneric", "reduction left a non-basis monomial");
                ext.left[a](it->second, b) = cc;
            }
        }
    return ext;
}

mat pi_map(const exterior_algebra_rep& ext, int k) {
    if (k <= 1) return mat::identity(k == 0 ? 1 : ext.N);
    const auto idx = ext.in_degree(k);
    std::map<size_t, size_t> pos;
    for (size_t r = 0; r < idx.size(); ++r) pos[idx[r]] = r;
    const size_t T = ipow(ext.N, k);
    mat pi(idx.size(), T);
    for (size_t t = 0; t < T; ++t)
        for (const auto& [mm, cc] : reduce_to_ordered(ext.rules, digits(t, ext.N, k)))
            pi(pos.at(ext.index.at(mm)), t) = cc;
    return pi;
}

mat alternating_lift(const exterior_algebra_rep& ext, int k) {
    if (k <= 1) return mat::identity(k == 0 ? 1 : ext.N);
    const mat A = antisymmetric_tensors(ext.v, k);
    const mat pa = pi_map(ext, k) * A;
    if (pa.rows() != pa.cols() || rank(pa) != pa.rows())
        fail("NonFlat", "alternating tensors do not map onto the exterior algebra");
    return A * inverse(pa);
}

mat exterior_pairing(const cominuscule_context& c, const exterior_algebra_rep& plus,
                     const exterior_algebra_rep& minus) {
    (void)c;
    const size_t n = plus.dim(), N = plus.N;
    mat P(n, n);
    for (size_t k = 0; k <= N; ++k) {
        const auto idx = plus.in_degree(k);
        const mat Lp = alternating_lift(plus, static_cast<int>(k));
        const mat Lm = alternating_lift(minus, static_cast<int>(k));
        // ⟨y_{a_1}⊗…⊗y_{a_k}, x_{b_1}⊗…⊗x_{b_k}⟩ = 1 iff a is b reversed
        mat revLp(Lp.rows(), Lp.cols());
        for (size_t t = 0; t < Lp.rows(); ++t) {
            monomial m = digits(t, N, static_cast<int>(k));
            std::reverse(m.begin(), m.end());
            size_t rt = 0;
            for (size_t d : m) rt = rt * N + d;
            for (size_t j = 0; j < Lp.cols(); ++j) revLp(t, j) = Lp(rt, j);
        }
        const mat blk = Lm.transpose() * revLp;
        if (rank(blk) != idx.size()) fail("SingularPairing", "degree " + std::to_string(k) + " block is singular");
        for (size_t a = 0; a < idx.size(); ++a)
            for (size_t b = 0; b < idx.size(); ++b) P(idx[a], idx[b]) = blk(a, b);
    }
    return P;
}

clifford_data build_clifford(const cominuscule_context& c) {
    clifford_data d;
    d.ext_plus = exterior_algebra(c, true);
    d.ext_minus = exterior_algebra(c, false);
    d.pairing = exterior_pairing(c, d.ext_plus, d.ext_minus);
    const size_t n = d.ext_plus.dim();
    d.gamma_plus = d.ext_plus.left;
    const mat Pi = inverse(d.pairing);
    for (size_t I = 0; I < n; ++I) {
        // right multiplication by y_I on Λ_q(u_−)
        mat R(n, n);
        for (size_t w = 0; w < n; ++w)
            for (size_t m = 0; m < n; ++m) R(m, w) = d.ext_minus.left[w](m, I);
        d.gamma_minus.push_back(Pi * R.transpose() * d.pairing);
    }
    const int rk = c.rs->rank();
    d.rho_e.assign(rk, mat(n, n));
    d.rho_f.assign(rk, mat(n, n));
    for (size_t k = 1; k <= d.ext_plus.N; ++k) {
        const auto idx = d.ext_plus.in_degree(k);
        const weight_module tk = tensor_power(c.u_plus, static_cast<int>(k));
        const mat pi = pi_map(d.ext_plus, static_cast<int>(k));
        const mat L = alternating_lift(d.ext_plus, static_cast<int>(k));
        for (int j = 0; j < rk; ++j) {
            if (!c.levi[j]) continue;
            const mat e = pi * tk.E[j] * L, f = pi * tk.F[j] * L;
            for (size_t a = 0; a < idx.size(); ++a)
                for (size_t b = 0; b < idx.size(); ++b) {
                    d.rho_e[j](idx[a], idx[b]) = e(a, b);
                    d.rho_f[j](idx[a], idx[b]) = f(a, b);
                }
        }
    }
    return d;
}

mat creation(const clifford_data& d, const vec& x) {
    const size_t n = d.ext_plus.dim();
    mat out(n, n);
    for (size_t a = 0; a < n; ++a)
        if (!x[a].is_zero()) out += d.gamma_plus[a].scaled(x[a]);
    return out;
}

mat annihilation(const clifford_data& d, const vec& y) {
    const size_t n = d.ext_plus.dim();
    mat out(n, n);
    for (size_t a = 0; a < n; ++a)
        if (!y[a].is_zero()) out += d.gamma_minus[a].scaled(y[a]);
    return out;
}

namespace {

mat gamma_image_basis(const clifford_data& d) {
    const size_t n = d.ext_plus.dim();
    mat G(n * n, n * n);
    for (size_t I = 0; I < n; ++I)
        for (size_t K = 0; K < n; ++K) {
            const mat op = d.gamma_minus[I] * d.gamma_plus[K];
            for (size_t r = 0; r < n; ++r)
                for (size_t s = 0; s < n; ++s) G(r * n + s, I * n + K) = op(r, s);
        }
    return G;
}

}  // namespace

factorization_report gamma_factorization(const clifford_data& d) {
    factorization_report r;
    const size_t n = d.ext_plus.dim();
    r.expected = n * n;
    r.rank = rank(gamma_image_basis(d));
    r.full = r.rank == r.expected;
    if (!r.full) fail("RankDeficient", "gamma has rank " + std::to_string(r.rank));
    return r;
}

std::vector<vec> frobenius_dual_basis(const exterior_algebra_rep& ext) {
    const size_t n = ext.dim(), N = ext.N, top = n - 1;
    std::vector<vec> z(n, vec(n));
    for (size_t k = 0; k <= N; ++k) {
        const auto I = ext.in_degree(k), J = ext.in_degree(N - k);
        mat M(I.size(), J.size());
        for (size_t a = 0; a < I.size(); ++a)
            for (size_t b = 0; b < J.size(); ++b) M(a, b) = ext.left[I[a]](top, J[b]);
        if (M.rows() != M.cols() || rank(M) != M.rows()) fail("NotFrobenius", "top-degree pairing is singular");
        const mat Z = inverse(M);
        for (size_t cidx = 0; cidx < I.size(); ++cidx)
            for (size_t b = 0; b < J.size(); ++b) z[I[cidx]][J[b]] = Z(b, cidx);
    }
    // x_I z_J = δ x_top in matching degrees, 0 above
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b) {
            const vec p = ext.left[a] * z[b];
            if (ext.degree(a) == ext.degree(b)) {
                for (size_t t = 0; t < n; ++t)
                    if (p[t] != ((t == top && a == b) ? scalar(1) : scalar(0)))
                        fail("NotFrobenius", "dual basis condition fails");
            } else if (ext.degree(a) > ext.degree(b)) {
                for (const auto& v : p)
                    if (!v.is_zero()) fail("NotFrobenius", "product above the top degree");
            }
        }
    return z;
}

// ---------------------------------------------------------------------------

star_params star_preset(const cominuscule_context& c, const std::string& name) {
    star_params p;
    if (name == "default" || name == "a") return p;
    if (name == "b") {
        p.base_scale = c.ctx.qpow(-1L);
        return p;
    }
    fail("UnknownPreset", name);
}

mat clifford_gram(const cominuscule_context& c, const clifford_data& d, const star_params& p) {
    const mat G1 = invariant_inner_product(c.u_plus, p.base_scale);
    const size_t n = d.ext_plus.dim();
    mat M(n, n);
    mat Gk = mat::identity(1);
    for (size_t k = 0; k <= d.ext_plus.N; ++k) {
        if (k > 0) Gk = kron(Gk, G1);
        const auto idx = d.ext_plus.in_degree(k);
        const mat L = alternating_lift(d.ext_plus, static_cast<int>(k));
        mat blk = L.transpose() * Gk * L;
        auto it = p.degree_scale.find(static_cast<int>(k));
        if (it != p.degree_scale.end()) blk = blk.scaled(it->second);
        for (size_t a = 0; a < idx.size(); ++a)
            for (size_t b = 0; b < idx.size(); ++b) M(idx[a], idx[b]) = blk(a, b);
    }
    return M;
}

mat adjoint_wrt(const mat& gram, const mat& t) {
    if (gram.rows() != gram.cols() || rank(gram) != gram.rows()) fail("SingularGram", "Gram matrix is singular");
    return inverse(gram) * t.transpose() * gram;
}

std::vector<commutation_expansion> all_commutation_relations(const clifford_data& d) {
    const auto& ext = d.ext_plus;
    const size_t n = ext.dim(), N = ext.N;
    mat rhs(n * n, N * N);
    for (size_t i = 0; i < N; ++i)
        for (size_t j = 0; j < N; ++j) {
            const mat op = d.gamma_plus[ext.index.at({i})] * d.gamma_minus[ext.index.at({j})];
            for (size_t r = 0; r < n; ++r)
                for (size_t s = 0; s < n; ++s) rhs(r * n + s, i * N + j) = op(r, s);
        }
    auto x = solve(gamma_image_basis(d), rhs);
    if (!x) fail("RankDeficient", "operator outside the gamma image");
    std::vector<commutation_expansion> out;
    for (size_t i = 0; i < N; ++i)
        for (size_t j = 0; j < N; ++j) {
            commutation_expansion e;
            e.i = i;
            e.j = j;
            for (size_t I = 0; I < n; ++I)
                for (size_t K = 0; K < n; ++K)
                    if (!(*x)(I * n + K, i * N + j).is_zero()) e.coeffs[{I, K}] = (*x)(I * n + K, i * N + j);
            out.push_back(std::move(e));
        }
    return out;
}

std::optional<gamma_coeffs> gamma_expansion(const clifford_data& d, const mat& t) {
    const size_t n = d.ext_plus.dim();
    if (t.rows() != n || t.cols() != n) fail("DimensionMismatch", "operator must act on the Clifford module");
    mat rhs(n * n, 1);
    for (size_t r = 0; r < n; ++r)
        for (size_t s = 0; s < n; ++s) rhs(r * n + s, 0) = t(r, s);
    auto x = solve(gamma_image_basis(d), rhs);
    if (!x) return std::nullopt;
    gamma_coeffs out;
    for (size_t I = 0; I < n; ++I)
        for (size_t K = 0; K < n; ++K)
            if (!(*x)(I * n + K, 0).is_zero()) out[{I, K}] = (*x)(I * n + K, 0);
    return out;
}

size_t expansion_degree(const clifford_data& d, const gamma_coeffs& e) {
    size_t deg = 0;
    for (const auto& [ik, c] : e) deg = std::max(deg, d.ext_minus.degree(ik.first) + d.ext_plus.degree(ik.second));
    return deg;
}

commutation_expansion commutation_relations(const clifford_data& d, size_t i, size_t j) {
    const auto& ext = d.ext_plus;
    if (i >= ext.N || j >= ext.N) fail("IndexOutOfRange", "generator index");
    const size_t n = ext.dim();
    const mat op = d.gamma_plus[ext.index.at({i})] * d.gamma_minus[ext.index.at({j})];
    mat rhs(n * n, 1);
    for (size_t r = 0; r < n; ++r)
        for (size_t s = 0; s < n; ++s) rhs(r * n + s, 0) = op(r, s);
    auto x = solve(gamma_image_basis(d), rhs);
    if (!x) fail("RankDeficient", "operator outside the gamma image");
    commutation_expansion e;
    e.i = i;
    e.j = j;
    for (size_t I = 0; I < n; ++I)
        for (size_t K = 0; K < n; ++K)
            if (!(*x)(I * n + K, 0).is_zero()) e.coeffs[{I, K}] = (*x)(I * n + K, 0);
    return e;
}

std::string render_expansion(const clifford_data& d, const commutation_expansion& e, const scalar_context& ctx) {
    const auto xs = d.ext_plus.names(), ys = d.ext_minus.names();
    std::ostringstream os;
    os << xs[e.i] << "*" << ys[e.j] << " = ";
    bool first = true;
    for (const auto& [ik, c] : e.coeffs) {
        std::string mono = subset_str(d.ext_minus.basis[ik.first], ys, "*");
        const std::string xm = subset_str(d.ext_plus.basis[ik.second], xs, "*");
        if (!xm.empty()) mono += (mono.empty() ? "" : "*") + xm;
        if (mono.empty()) {
            std::string cs = ctx.pretty(c);
            os << (first ? cs : (cs[0] == '-' ? " - " + cs.substr(1) : " + " + cs));
        } else {
            os << term_str(c, mono, ctx, first);
        }
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

// ---------------------------------------------------------------------------

std::vector<std::string> module_algebra_audit(const cominuscule_context& c, const clifford_data& d) {
    std::vector<std::string> bad;
    const auto& ext = d.ext_plus;
    const size_t n = ext.dim(), N = ext.N;
    auto rho_k = [&](const weight& lam) {
        mat k(n, n);
        for (size_t a = 0; a < n; ++a) {
            weight w(c.rs->rank(), 0);
            for (size_t i : ext.basis[a]) w = w + c.par.xi[i];
            k(a, a) = c.rs->qform(lam, w);
        }
        return k;
    };
    for (int j = 0; j < c.rs->rank(); ++j) {
        if (!c.levi[j]) continue;
        const weight al = c.rs->simple_root(j);
        const mat Ki = rho_k(-al);
        const std::string tag = std::to_string(j + 1);
        for (size_t i = 0; i < N; ++i) {
            const size_t a = ext.index.at({i});
            // E(x ∧ w) = Ex ∧ w + Kx ∧ Ew ; F(x ∧ w) = Fx ∧ K^{-1}w + x ∧ Fw
            vec ex(n), fx(n), ey(n), fy(n);
            for (size_t l = 0; l < N; ++l) {
                ex[ext.index.at({l})] = c.u_plus.E[j](l, i);
                fx[ext.index.at({l})] = c.u_plus.F[j](l, i);
                ey[ext.index.at({l})] = c.u_minus.E[j](l, i);
                fy[ext.index.at({l})] = c.u_minus.F[j](l, i);
            }
            const scalar kx = c.rs->qform(al, c.u_plus.wts[i]);
            const scalar ky = c.rs->qform(al, c.u_minus.wts[i]);
            if (d.rho_e[j] * d.gamma_plus[a] != creation(d, ex) + d.gamma_plus[a].scaled(kx) * d.rho_e[j])
                bad.push_back("gamma+ E" + tag);
            if (d.rho_f[j] * d.gamma_plus[a] != creation(d, fx) * Ki + d.gamma_plus[a] * d.rho_f[j])
                bad.push_back("gamma+ F" + tag);
            if (d.rho_e[j] * d.gamma_minus[a] != annihilation(d, ey) + d.gamma_minus[a].scaled(ky) * d.rho_e[j])
                bad.push_back("gamma- E" + tag);
            if (d.rho_f[j] * d.gamma_minus[a] != annihilation(d, fy) * Ki + d.gamma_minus[a] * d.rho_f[j])
                bad.push_back("gamma- F" + tag);
        }
    }
    return bad;
}

std::vector<std::string> frobenius_ideal_audit(const exterior_algebra_rep& ext) {
    std::vector<std::string> bad;
    const size_t n = ext.dim(), top = n - 1;
    for (size_t a = 0; a < n; ++a) {
        bool found = false;
        for (size_t b = 0; b < n && !found; ++b) found = !ext.left[b](top, a).is_zero();
        if (!found) bad.push_back("no b with b^x_J in the top degree for J = " + std::to_string(a));
    }
    return bad;
}

std::vector<std::string> associativity_audit(const exterior_algebra_rep& ext, size_t samples, unsigned seed) {
    std::vector<std::string> bad;
    const size_t n = ext.dim();
    auto check = [&](size_t a, size_t b) {
        mat prod(n, n);
        for (size_t c = 0; c < n; ++c) {
            const scalar& k = ext.left[a](c, b);
            if (!k.is_zero()) prod += ext.left[c].scaled(k);
        }
        if (ext.left[a] * ext.left[b] != prod)
            bad.push_back("(" + std::to_string(a) + "," + std::to_string(b) + ")");
    };
    if (ext.N <= 4) {
        for (size_t a = 0; a < n; ++a)
            for (size_t b = 0; b < n; ++b) check(a, b);
    } else {
        std::mt19937 rng(seed);
        std::uniform_int_distribution<size_t> pick(0, n - 1);
        for (size_t s = 0; s < samples; ++s) check(pick(rng), pick(rng));
    }
    return bad;
}

}  // namespace qcl

namespace qcl {

std::vector<std::string> star_audit(const cominuscule_context& c, const clifford_data& d, const star_params& p) {
    std::vector<std::string> bad;
    const mat M = clifford_gram(c, d, p);
    auto star = [&](const mat& t) { return adjoint_wrt(M, t); };
    const size_t n = d.ext_plus.dim(), N = c.N();
    for (size_t a = 1; a <= N; ++a) {
        if (star(star(d.gamma_plus[a])) != d.gamma_plus[a]) bad.push_back("involution on x" + std::to_string(a));
        for (size_t b = 1; b <= N; ++b)
            if (star(d.gamma_plus[a] * d.gamma_minus[b]) != star(d.gamma_minus[b]) * star(d.gamma_plus[a]))
                bad.push_back("product x" + std::to_string(a) + " y" + std::to_string(b));
    }
    for (int j = 0; j < c.rs->rank(); ++j) {
        if (!c.levi[j]) continue;
        mat K(n, n);
        for (size_t a = 0; a < n; ++a) {
            weight w(c.rs->rank(), 0);
            for (size_t i : d.ext_plus.basis[a]) w = w + c.u_plus.wts[i];
            K(a, a) = c.rs->qform(c.rs->simple_root(j), w);
        }
        if (star(d.rho_e[j]) != K * d.rho_f[j]) bad.push_back("E" + std::to_string(j + 1) + " star");
        if (star(d.rho_f[j]) != d.rho_e[j] * inverse(K)) bad.push_back("F" + std::to_string(j + 1) + " star");
    }
    return bad;
}

}  // namespace qcl
