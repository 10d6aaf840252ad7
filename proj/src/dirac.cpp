#include "qcl/dirac.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "qcl/errors.hpp"

namespace qcl {

void koszul_element::add(const monomial& m, const subset& y, const scalar& c) {
    if (c.is_zero()) return;
    auto key = std::make_pair(m, y);
    scalar& slot = terms[key];
    slot += c;
    if (slot.is_zero()) terms.erase(key);
}

koszul_element koszul_boundary(const cominuscule_context& c) {
    return koszul_boundary(c, mat::identity(c.N()));
}

koszul_element koszul_boundary(const cominuscule_context& c, const mat& P) {
    const size_t N = c.N();
    if (P.rows() != N || P.cols() != N) fail("DimensionMismatch", "change of basis must be N x N");
    const mat Pi = inverse(P);
    koszul_element e;
    // x′_i ⊗ y′_i = Σ_{a,b} P(i,a) (P^{-T})(i,b) x_a ⊗ y_b
    for (size_t i = 0; i < N; ++i)
        for (size_t a = 0; a < N; ++a) {
            if (P(i, a).is_zero()) continue;
            for (size_t b = 0; b < N; ++b) e.add({a}, {b}, P(i, a) * Pi(b, i));
        }
    return e;
}

eth_square_certificate verify_eth_squared_zero(const cominuscule_context& c, const koszul_element& eth) {
    const auto sym = rewrite_to_ordered(quantum_symmetric_algebra(c.u_plus));
    const auto ext = rewrite_to_ordered(quantum_exterior_algebra(c.u_minus));
    eth_square_certificate cert;
    const long N = c.N();
    cert.target_dim = static_cast<size_t>(classical_dimension(qa_kind::symmetric, N, 2) *
                                          classical_dimension(qa_kind::exterior, N, 2));
    koszul_element sq;
    for (const auto& [k1, c1] : eth.terms)
        for (const auto& [k2, c2] : eth.terms) {
            ++cert.products;
            // (a ⊗ y)(b ⊗ y′) = (b·a) ⊗ (y ∧ y′)
            monomial first = k2.first;
            first.insert(first.end(), k1.first.begin(), k1.first.end());
            monomial second = k1.second;
            second.insert(second.end(), k2.second.begin(), k2.second.end());
            const auto pf = reduce_to_ordered(sym, first);
            const auto ps = reduce_to_ordered(ext, second);
            for (const auto& [mf, cf] : pf)
                for (const auto& [ms, cs] : ps) sq.add(mf, ms, c1 * c2 * cf * cs);
        }
    cert.zero = sq.terms.empty();
    if (!cert.zero) fail("NonzeroSquare", "the Koszul boundary does not square to zero");
    return cert;
}

dirac_matrix dirac_element(const cominuscule_context& c, const clifford_data& d, const weight_module& w,
                           const star_params& p) {
    if (std::find(w.active.begin(), w.active.end(), false) != w.active.end())
        fail("InvalidInput", "W must be a module over the full algebra");
    dirac_matrix m;
    m.w = w;
    const size_t n = d.ext_plus.dim();
    m.dim = w.dim() * n;
    try {
        m.kappa_gram = invariant_inner_product(w);
    } catch (const error& e) {
        fail("MissingInnerProduct", e.what());
    }
    m.clifford_gram = clifford_gram(c, d, p);
    m.gram = kron(m.kappa_gram, m.clifford_gram);

    uq U(c.rs);
    std::vector<mat> kappa;
    for (const auto& e : c.e_xi) kappa.push_back(w.act(U.antipode_inverse(e)));
    m.eth = mat(m.dim, m.dim);
    for (const auto& [key, coef] : koszul_boundary(c).terms) {
        // κ is multiplicative on S_q(u_+)^op
        mat k = mat::identity(w.dim());
        for (size_t idx : key.first) k = kappa[idx] * k;
        m.eth += kron(k, d.gamma_minus[d.ext_minus.index.at(key.second)]).scaled(coef);
    }
    m.eth_star = adjoint_wrt(m.gram, m.eth);
    m.dirac = m.eth + m.eth_star;
    return m;
}

dirac_square_report verify_dirac_square(const dirac_matrix& m) {
    dirac_square_report r;
    r.eth_sq_zero = (m.eth * m.eth).is_zero();
    r.eth_star_sq_zero = (m.eth_star * m.eth_star).is_zero();
    r.identity = m.dirac * m.dirac == m.eth * m.eth_star + m.eth_star * m.eth;
    if (!r.identity) fail("IdentityFails", "D^2 differs from eth eth* + eth* eth");
    return r;
}

spectrum_report dirac_spectrum(const dirac_matrix& m, const scalar_context& ctx, double q0) {
    if (!(q0 > 0)) fail("InvalidParameter", "q0 must be positive");
    const Eigen::Index n = static_cast<Eigen::Index>(m.dim);
    Eigen::MatrixXd D(n, n), G(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            D(i, j) = ctx.specialize(m.dirac(i, j), q0);
            G(i, j) = ctx.specialize(m.gram(i, j), q0);
        }
    spectrum_report r;
    Eigen::LLT<Eigen::MatrixXd> llt(G);
    r.positive_gram = llt.info() == Eigen::Success;
    if (r.positive_gram) {
        // H = Lᵀ D L^{-T} is symmetric when D is self-adjoint for G = L Lᵀ
        const Eigen::MatrixXd L = llt.matrixL();
        const Eigen::MatrixXd H = L.transpose() * D * L.transpose().inverse();
        r.asymmetry = (H - H.transpose()).cwiseAbs().maxCoeff();
        const Eigen::MatrixXd Hs = 0.5 * (H + H.transpose());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Hs * Hs);
        for (Eigen::Index i = 0; i < n; ++i) r.eigenvalues.push_back(es.eigenvalues()(i));
    } else {
        Eigen::EigenSolver<Eigen::MatrixXd> es(D * D);
        for (Eigen::Index i = 0; i < n; ++i) r.eigenvalues.push_back(es.eigenvalues()(i).real());
    }
    std::sort(r.eigenvalues.begin(), r.eigenvalues.end());
    return r;
}

}  // namespace qcl
