#include "doctest.h"
#include "qcl/braiding.hpp"

using namespace qcl;

namespace {

bool is_module_map(const weight_module& src, const weight_module& dst, const mat& f) {
    for (int i = 0; i < src.rank(); ++i) {
        if (!src.active[i]) continue;
        if (f * src.E[i] != dst.E[i] * f) return false;
        if (f * src.F[i] != dst.F[i] * f) return false;
    }
    return true;
}

mat id(size_t n) { return mat::identity(n); }

}  // namespace

TEST_CASE("sl2 braiding and commutor on the 2-dim module") {
    auto rs = build_root_system('A', 1);
    auto V = simple_module(rs, {1});
    const auto& c = V.ctx;
    mat R = braiding(V, V);
    mat want(4, 4);
    want(0, 0) = want(3, 3) = c.qpow(rat(1, 2));
    want(1, 1) = c.qpow(rat(1, 2)) - c.qpow(rat(-3, 2));
    want(1, 2) = want(2, 1) = c.qpow(rat(-1, 2));
    CHECK(R == want);
    mat s = commutor(V, V);
    const scalar den = c.q() * c.q() + scalar(1);
    mat ws(4, 4);
    ws(0, 0) = ws(3, 3) = scalar(1);
    ws(1, 1) = (c.q() * c.q() - scalar(1)) / den;
    ws(2, 2) = -ws(1, 1);
    ws(1, 2) = ws(2, 1) = (scalar(2) * c.q()) / den;
    CHECK(s == ws);
    CHECK(s * s == id(4));
    CHECK(commutor_lagrange(V, V) == s);
}

TEST_CASE("double braiding eigenvalues") {
    auto rs = build_root_system('A', 1);
    auto V = simple_module(rs, {1});
    auto ed = double_braiding_eigendata(V, V);
    REQUIRE(ed.size() == 2);
    for (const auto& e : ed) {
        if (e.mu == weight{2}) CHECK(e.exponent == 1);
        if (e.mu == weight{0}) CHECK(e.exponent == -3);
    }
    auto T = trivial_module(rs);
    T.highest = weight{0};
    auto et = double_braiding_eigendata(V, T);
    REQUIRE(et.size() == 1);
    CHECK(et[0].value == scalar(1));
}

TEST_CASE("braidings and commutors are module maps") {
    auto rs = build_root_system('A', 2);
    auto V = simple_module(rs, {1, 0});
    auto W = simple_module(rs, {0, 1});
    mat R = braiding(V, W);
    CHECK(is_module_map(tensor(V, W), tensor(W, V), R));
    mat s = commutor(V, W);
    CHECK(is_module_map(tensor(V, W), tensor(W, V), s));
    CHECK(commutor(W, V) * s == id(9));
    CHECK(commutor_lagrange(V, W) == s);
}

TEST_CASE("Yang-Baxter on the A2 vector representation") {
    auto rs = build_root_system('A', 2);
    auto V = simple_module(rs, {1, 0});
    mat R = braiding(V, V);
    mat R12 = kron(R, id(3)), R23 = kron(id(3), R);
    CHECK(R12 * R23 * R12 == R23 * R12 * R23);
}

TEST_CASE("commutor eigenvalues on V tensor V are +1 and -1") {
    auto rs = build_root_system('A', 1);
    auto V = simple_module(rs, {2});
    mat s = commutor(V, V);
    const mat I = id(9);
    CHECK((s - I) * (s + I) == mat(9, 9));
    CHECK(rank(s - I) + rank(s + I) == 9);
}

TEST_CASE("cactus relations for n = 3 and n = 4") {
    auto rs = build_root_system('A', 1);
    auto V = simple_module(rs, {1});
    for (int n : {3, 4}) {
        cactus_action J(V, n);
        size_t d = 1;
        for (int i = 0; i < n; ++i) d *= 2;
        for (int p = 1; p <= n; ++p)
            for (int t = p + 1; t <= n; ++t) {
                const mat& s = J.generator(p, t);
                CHECK(s * s == id(d));
                for (int k = p; k <= t; ++k)
                    for (int l = k + 1; l <= t; ++l) {
                        const mat& skl = J.generator(k, l);
                        const mat& img = J.generator(p + t - l, p + t - k);
                        CHECK(s * skl == img * s);
                    }
                for (int k = 1; k <= n; ++k)
                    for (int l = k + 1; l <= n; ++l)
                        if (l < p || k > t) CHECK(s * J.generator(k, l) == J.generator(k, l) * s);
            }
    }
}

TEST_CASE("cactus axiom on a triple") {
    auto rs = build_root_system('A', 1);
    auto U = simple_module(rs, {1});
    auto V = simple_module(rs, {2});
    auto W = simple_module(rs, {1});
    mat lhs = commutor(tensor(V, U), W) * kron(commutor(U, V), id(W.dim()));
    mat rhs = commutor(U, tensor(W, V)) * kron(id(U.dim()), commutor(V, W));
    CHECK(lhs == rhs);
}
