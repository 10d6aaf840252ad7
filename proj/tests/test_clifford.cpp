#include "doctest.h"
#include "qcl/clifford.hpp"
#include "qcl/errors.hpp"

using namespace qcl;

namespace {

mat from_rows(size_t n, const std::vector<scalar>& v) {
    mat m(n, n);
    for (size_t i = 0; i < n * n; ++i) m(i / n, i % n) = v[i];
    return m;
}

const cominuscule_context& cp2() {
    static const auto c = build_context('A', 2, 0);
    return c;
}
const clifford_data& cp2_cliff() {
    static const auto d = build_clifford(cp2());
    return d;
}

}  // namespace

TEST_CASE("CP2 context") {
    const auto& c = cp2();
    CHECK(c.N() == 2);
    uq U(c.rs);
    CHECK(U.render(c.e_xi[0]) == "q^-1*E1*E2 - E2*E1");
    CHECK(U.render(c.e_xi[1]) == "E1");
    const scalar o(1), z(0);
    CHECK(c.u_plus.E[1] == from_rows(2, {z, -o, z, z}));
    CHECK(c.u_plus.F[1] == from_rows(2, {z, z, -o, z}));
    auto rels = verify_schubert_quadratic(c);
    REQUIRE(rels.size() == 1);
    CHECK(rels[0].exponent == rat(-1));
    CHECK(rels[0].coeffs.empty());
}

TEST_CASE("CP2 exterior algebras and pairing") {
    const auto& c = cp2();
    const auto& d = cp2_cliff();
    const auto q = c.ctx.q();
    auto nm = d.ext_plus.names();
    CHECK(render_rule(d.ext_plus.rules, {1, 0}, nm, c.ctx) == "x2*x1 = -q*x1*x2");
    CHECK(render_rule(d.ext_minus.rules, {1, 0}, d.ext_minus.names(), c.ctx) == "y2*y1 = -q^-1*y1*y2");
    CHECK(d.ext_plus.rules.rules.size() == 3);
    const scalar o(1), z(0);
    CHECK(d.pairing == from_rows(4, {o, z, z, z, z, o, z, z, z, z, o, z, z, z, z, -(q + q.inv()).inv()}));
}

TEST_CASE("CP2 creation and annihilation operators") {
    const auto& c = cp2();
    const auto& d = cp2_cliff();
    const auto q = c.ctx.q();
    const scalar o(1), z(0);
    const scalar h = (o + q * q).inv();
    CHECK(d.gamma_plus[1] == from_rows(4, {z, z, z, z, o, z, z, z, z, z, z, z, z, z, o, z}));
    CHECK(d.gamma_plus[2] == from_rows(4, {z, z, z, z, z, z, z, z, o, z, z, z, z, -q, z, z}));
    CHECK(d.gamma_minus[1] == from_rows(4, {z, o, z, z, z, z, z, z, z, z, z, h, z, z, z, z}));
    CHECK(d.gamma_minus[2] == from_rows(4, {z, z, o, z, z, z, z, -(q + q.inv()).inv(), z, z, z, z, z, z, z, z}));
}

TEST_CASE("CP2 commutation relations") {
    const auto& c = cp2();
    const auto& d = cp2_cliff();
    const auto q = c.ctx.q();
    const auto& g = d.gamma_plus;
    const auto& y = d.gamma_minus;
    const mat one = mat::identity(4);
    const scalar s = q + q.inv();
    CHECK(g[1] * y[1] + g[2] * y[2] == one + (y[3] * g[3]).scaled(s));
    CHECK((g[1] * y[1]).scaled(q) - (g[2] * y[2]).scaled(q.inv()) == (y[2] * g[2] - y[1] * g[1]).scaled(s));
    CHECK(g[1] * y[2] == (y[2] * g[1]).scaled(-s));
    CHECK(g[2] * y[1] == (y[1] * g[2]).scaled(-s));
    auto all = all_commutation_relations(d);
    REQUIRE(all.size() == 4);
    CHECK(render_expansion(d, all[1], c.ctx) == "x1*y2 = (-q - q^-1)*y2*x1");
    for (const auto& e : all) {
        auto one_by_one = commutation_relations(d, e.i, e.j);
        CHECK(one_by_one.coeffs == e.coeffs);
    }
}

TEST_CASE("CP2 star presets") {
    const auto& c = cp2();
    const auto& d = cp2_cliff();
    const auto q = c.ctx.q();
    const scalar o(1), z(0);
    auto Ma = clifford_gram(c, d, star_preset(c, "a"));
    CHECK(Ma == from_rows(4, {o, z, z, z, z, o, z, z, z, z, q, z, z, z, z, (q + q.inv()).inv()}));
    CHECK(adjoint_wrt(Ma, d.gamma_plus[1]) == d.gamma_minus[1]);
    CHECK(adjoint_wrt(Ma, d.gamma_plus[2]) == d.gamma_minus[2].scaled(q));
    auto Mb = clifford_gram(c, d, star_preset(c, "b"));
    CHECK(Mb(1, 1) == q.inv());
    CHECK(Mb(3, 3) == (q * q).inv() * (q + q.inv()).inv());
    // the general adjoint display at α = q^-1, γ = q^-2/(q+q^-1)
    const scalar al = q.inv(), ga = (q * q).inv() * (q + q.inv()).inv();
    CHECK(adjoint_wrt(Mb, d.gamma_plus[1]) ==
          from_rows(4, {z, al, z, z, z, z, z, z, z, z, z, ga / (q * al), z, z, z, z}));
    CHECK(adjoint_wrt(Mb, d.gamma_plus[2]) ==
          from_rows(4, {z, z, q * al, z, z, z, z, -(q * ga) / al, z, z, z, z, z, z, z, z}));
    CHECK(adjoint_wrt(Mb, d.gamma_plus[1]) == d.gamma_minus[1].scaled(q.inv()));
    CHECK(adjoint_wrt(Mb, d.gamma_plus[2]) == d.gamma_minus[2]);
    CHECK(clifford_gram(c, d, star_preset(c, "default")) == Ma);
    CHECK(star_audit(c, d, star_preset(c, "a")).empty());
    CHECK(star_audit(c, d, star_preset(c, "b")).empty());
    // rescaling a whole degree keeps the form invariant
    star_params sweep;
    sweep.degree_scale[2] = q * q * q;
    CHECK(star_audit(c, d, sweep).empty());
    CHECK(clifford_gram(c, d, sweep)(3, 3) == Ma(3, 3) * q * q * q);
    CHECK_THROWS_AS(star_preset(c, "zzz"), qcl::error);
    CHECK_THROWS_AS(adjoint_wrt(mat(4, 4), d.gamma_plus[1]), qcl::error);
}

TEST_CASE("adjoint degrees under star rescaling") {
    const auto& c = cp2();
    const auto& d = cp2_cliff();
    const mat& x1 = d.gamma_plus[d.ext_plus.index.at({0})];
    auto e = gamma_expansion(d, x1);
    REQUIRE(e);
    CHECK(e->size() == 1);
    CHECK(expansion_degree(d, *e) == 1);
    star_params p;
    auto a = gamma_expansion(d, adjoint_wrt(clifford_gram(c, d, p), x1));
    REQUIRE(a);
    CHECK(expansion_degree(d, *a) == 1);
    p.degree_scale[2] = c.ctx.qpow(1L);
    auto b = gamma_expansion(d, adjoint_wrt(clifford_gram(c, d, p), x1));
    REQUIRE(b);
    CHECK(expansion_degree(d, *b) == 3);
    CHECK_THROWS_AS(gamma_expansion(d, mat::identity(3)), qcl::error);
}

TEST_CASE("gamma factorization") {
    CHECK(gamma_factorization(cp2_cliff()).rank == 16);
    auto c1 = build_context('A', 1, 0);
    auto d1 = build_clifford(c1);
    CHECK(c1.N() == 1);
    auto f = gamma_factorization(d1);
    CHECK(f.rank == 4);
    CHECK(f.full);
}

TEST_CASE("audits on CP2") {
    const auto& c = cp2();
    const auto& d = cp2_cliff();
    CHECK(module_algebra_audit(c, d).empty());
    CHECK(frobenius_ideal_audit(d.ext_plus).empty());
    CHECK(frobenius_ideal_audit(d.ext_minus).empty());
    CHECK(associativity_audit(d.ext_plus, 50, 7).empty());
    auto z = frobenius_dual_basis(d.ext_plus);
    CHECK(z.size() == 4);
}

TEST_CASE("Lagrangian Grassmannian exterior algebra is flat") {
    auto c = build_context('C', 2, 1);
    CHECK(c.N() == 3);
    auto d = build_clifford(c);
    for (size_t k = 0; k <= 3; ++k) {
        const size_t binom[] = {1, 3, 3, 1};
        CHECK(d.ext_plus.in_degree(k).size() == binom[k]);
        CHECK(d.ext_minus.in_degree(k).size() == binom[k]);
    }
    CHECK(module_algebra_audit(c, d).empty());
    CHECK(frobenius_ideal_audit(d.ext_plus).empty());
    CHECK(star_audit(c, d, star_preset(c, "default")).empty());
}

TEST_CASE("non-cominuscule node is rejected") {
    CHECK_THROWS_AS(build_context('C', 2, 0), qcl::error);
    CHECK_THROWS_AS(build_context('G', 2, 0), qcl::error);
}
