#include <random>

#include "doctest.h"
#include "qcl/dirac.hpp"
#include "qcl/errors.hpp"

using namespace qcl;

namespace {

const cominuscule_context& cp2() {
    static const auto c = build_context('A', 2, 0);
    return c;
}
const clifford_data& cp2_cliff() {
    static const auto d = build_clifford(cp2());
    return d;
}
const cominuscule_context& gr24() {
    static const auto c = build_context('A', 3, 1);
    return c;
}

mat random_invertible(size_t n, std::mt19937& rng) {
    std::uniform_int_distribution<int> dist(-3, 3);
    for (;;) {
        mat p(n, n);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) p(i, j) = scalar(dist(rng));
        if (rank(p) == n) return p;
    }
}

}  // namespace

TEST_CASE("Koszul boundary") {
    auto e = koszul_boundary(cp2());
    CHECK(e.terms.size() == 2);
    CHECK(e.terms.at({{0}, {0}}) == scalar(1));
    CHECK(e.terms.at({{1}, {1}}) == scalar(1));
    CHECK(koszul_boundary(build_context('A', 1, 0)).terms.size() == 1);
    CHECK(koszul_boundary(gr24()).terms.size() == 4);
    CHECK(verify_eth_squared_zero(cp2(), e).zero);
    auto cert = verify_eth_squared_zero(gr24(), koszul_boundary(gr24()));
    CHECK(cert.zero);
    CHECK(cert.target_dim == 60);
}

TEST_CASE("a wrong boundary is caught") {
    koszul_element e;
    e.add({0}, {1}, scalar(1));
    e.add({1}, {0}, scalar(1));
    CHECK_THROWS_AS(verify_eth_squared_zero(cp2(), e), qcl::error);
}

TEST_CASE("Koszul boundary is basis independent") {
    std::mt19937 rng(11);
    for (const auto* c : {&cp2(), &gr24()})
        for (int t = 0; t < 3; ++t) {
            auto P = random_invertible(c->N(), rng);
            CHECK(koszul_boundary(*c, P) == koszul_boundary(*c));
        }
}

TEST_CASE("Dirac square on CP2") {
    const auto& c = cp2();
    const auto& d = cp2_cliff();
    for (weight hw : {weight{1, 0}, weight{0, 1}, weight{0, 0}}) {
        auto W = simple_module(c.rs, hw);
        auto m = dirac_element(c, d, W, star_preset(c, "a"));
        CHECK(m.dim == W.dim() * 4);
        auto r = verify_dirac_square(m);
        CHECK(r.ok());
    }
    auto m = dirac_element(c, d, simple_module(c.rs, {1, 0}), star_preset(c, "a"));
    CHECK(m.dim == 12);
    CHECK_FALSE(m.eth.is_zero());
    CHECK((m.eth * m.eth).is_zero());

    // q0 = 1/2: D is symmetric in a Gram-orthonormal frame
    auto s = dirac_spectrum(m, c.ctx, 0.5);
    CHECK(s.positive_gram);
    CHECK(s.asymmetry < 1e-10);
    CHECK(s.eigenvalues.size() == 12);
    for (double v : s.eigenvalues) CHECK(v > -1e-10);
    CHECK_THROWS_AS(dirac_spectrum(m, c.ctx, 0.0), qcl::error);
}

TEST_CASE("trivial W gives the Clifford anticommutator") {
    const auto& c = cp2();
    const auto& d = cp2_cliff();
    auto m = dirac_element(c, d, simple_module(c.rs, {0, 0}), star_preset(c, "a"));
    CHECK(m.dim == 4);
    CHECK(m.eth.is_zero());
    auto s = dirac_spectrum(m, c.ctx, 1.0);
    for (double v : s.eigenvalues) CHECK(std::abs(v) < 1e-12);
}

TEST_CASE("spectra vary continuously in q") {
    const auto& c = cp2();
    auto m = dirac_element(c, cp2_cliff(), simple_module(c.rs, {1, 0}), star_preset(c, "a"));
    auto a = dirac_spectrum(m, c.ctx, 0.99).eigenvalues;
    auto b = dirac_spectrum(m, c.ctx, 1.01).eigenvalues;
    auto one = dirac_spectrum(m, c.ctx, 1.0).eigenvalues;
    for (size_t i = 0; i < one.size(); ++i) {
        CHECK(std::abs(a[i] - one[i]) < 0.05);
        CHECK(std::abs(b[i] - one[i]) < 0.05);
    }
}

TEST_CASE("Grassmannian Gr(2,4)") {
    const auto& c = gr24();
    CHECK(c.N() == 4);
    auto rels = verify_schubert_quadratic(c);
    CHECK(rels.size() == 6);
    size_t middle = 0;
    for (const auto& r : rels) middle += r.coeffs.empty() ? 0 : 1;
    CHECK(middle == 1);
    auto d = build_clifford(c);
    const size_t binom[] = {1, 4, 6, 4, 1};
    for (size_t k = 0; k <= 4; ++k) CHECK(d.ext_plus.in_degree(k).size() == binom[k]);
    CHECK(gamma_factorization(d).rank == 256);
    CHECK(module_algebra_audit(c, d).empty());
    CHECK(frobenius_ideal_audit(d.ext_plus).empty());
    CHECK(frobenius_ideal_audit(d.ext_minus).empty());
}
