#include "doctest.h"
#include "qcl/module.hpp"

using namespace qcl;

TEST_CASE("seed modules satisfy the relations") {
    for (auto [t, n] : std::vector<std::pair<char, int>>{{'A', 1}, {'A', 2}, {'A', 3}, {'B', 2}, {'C', 2}, {'B', 3}, {'D', 4}}) {
        auto rs = build_root_system(t, n);
        auto m = seed_module(rs);
        auto bad = relation_audit(m);
        INFO(rs->label(), " ", bad.size() ? bad[0] : "");
        CHECK(bad.empty());
    }
}

TEST_CASE("simple module dimensions") {
    auto a1 = build_root_system('A', 1);
    CHECK(simple_module(a1, {3}).dim() == 4);
    auto a2 = build_root_system('A', 2);
    auto ad = simple_module(a2, {1, 1});
    CHECK(ad.dim() == 8);
    CHECK(relation_audit(ad).empty());
}

TEST_CASE("braid action on E1 in A2") {
    auto rs = build_root_system('A', 2);
    uq U(rs);
    CHECK(U.render(U.braid(1, element::e(0))) == "q^-1*E1*E2 - E2*E1");
}
