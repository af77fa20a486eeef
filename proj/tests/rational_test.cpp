#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "prym/rational.hpp"

using prym::Rat;

TEST_CASE("arithmetic and normalization") {
    CHECK(Rat(1, 2) + Rat(1, 3) == Rat(5, 6));
    CHECK(Rat(2, 4) == Rat(1, 2));
    CHECK(Rat(1, -2) == Rat(-1, 2));
    CHECK(Rat(6, 4) * Rat(2, 3) == Rat(1));
    CHECK(Rat(7) - Rat(7, 2) == Rat(7, 2));
    CHECK((Rat(3) / Rat(6)).str() == "1/2");
    CHECK(Rat(105, 2).str() == "105/2");
    CHECK(Rat(3).str() == "3");
    CHECK(Rat(0, 5) == Rat(0));
}

TEST_CASE("division by zero and overflow throw") {
    CHECK_THROWS_AS(Rat(1, 0), std::domain_error);
    CHECK_THROWS_AS(Rat(1) / Rat(0), std::domain_error);
    Rat big(std::int64_t{1} << 62);
    CHECK_THROWS_AS(big * big, std::overflow_error);
}
