#include "doctest.h"
#include "qcl/field.hpp"

using namespace qcl;

TEST_CASE("quantum integers") {
    scalar_context c{1};
    CHECK(c.qnum(2).str() == "(u^2 + 1)/(u)");
    CHECK(c.qnum(3) == c.q() * c.q() + scalar(1) + c.q().inv() * c.q().inv());
}
