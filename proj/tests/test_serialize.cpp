#include <random>

#include "doctest.h"
#include "qcl/errors.hpp"
#include "qcl/serialize.hpp"

using namespace qcl;

TEST_CASE("scalar strings round trip") {
    scalar_context c{2};
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> k(-4, 4), e(-6, 6);
    for (int t = 0; t < 200; ++t) {
        scalar x = scalar(k(rng)) + scalar::upow(e(rng), k(rng)) * c.q();
        scalar y = scalar::upow(e(rng)) + scalar(k(rng));
        if (y.is_zero()) continue;
        rat r(k(rng), 3);
        r.canonicalize();
        const scalar z = (x / y) * scalar(r);
        CHECK(parse_scalar(z.str()) == z);
    }
    CHECK(parse_scalar("0").is_zero());
    CHECK(parse_scalar("-u^2 + 3") == scalar(3) - scalar::upow(2));
    CHECK_THROWS_AS(parse_scalar("u^"), qcl::error);
    CHECK_THROWS_AS(parse_scalar("(1)/(0)"), qcl::error);
    CHECK_THROWS_AS(parse_scalar("x"), qcl::error);
}

TEST_CASE("modules round trip") {
    auto rs = build_root_system('C', 2);
    auto V = simple_module(rs, {1, 1});
    auto W = module_from_json(json::parse(to_json(V).dump()), rs);
    CHECK(W.wts == V.wts);
    CHECK(W.E == V.E);
    CHECK(W.F == V.F);
    CHECK(relation_audit(W).empty());
    CHECK(to_json(W).dump() == to_json(V).dump());
}

TEST_CASE("cached contexts pass the construction audits") {
    auto c = build_context('A', 3, 1);
    CHECK(context_audit(c).empty());
    const json j = json::parse(to_json(c).dump());
    auto r = context_from_json(j);
    CHECK(context_audit(r).empty());
    CHECK(to_json(r) == j);
    CHECK(content_hash(j) == content_hash(to_json(r)));

    r.u_plus.E[0](0, 1) = scalar(7) * r.u_plus.E[0](0, 1) + scalar(1);
    CHECK_FALSE(context_audit(r).empty());
}
