#include "doctest.h"
#include "lehmer/errors.hpp"
#include "lehmer/proportion.hpp"

using lehmer::Proportion;

TEST_CASE("parse accepts num/den and reduces") {
    const auto x = Proportion::parse("6/8");
    CHECK(x.num() == 3);
    CHECK(x.den() == 4);
    CHECK(Proportion::parse("1/1") == Proportion::whole());
    CHECK(x.str() == "3/4");
}

TEST_CASE("parse rejects floats and malformed text") {
    for (const char* bad : {"1.0", "0.5", "1", "/2", "1/", "a/b", "-1/2", "1/2/3", " 1/2", "1e0/1"}) {
        CHECK_THROWS_AS(Proportion::parse(bad), lehmer::ParseError);
    }
}

TEST_CASE("values outside (0, 1] are domain errors") {
    CHECK_THROWS_AS(Proportion::parse("0/5"), lehmer::DomainError);
    CHECK_THROWS_AS(Proportion::parse("3/2"), lehmer::DomainError);
    CHECK_THROWS_AS(Proportion::parse("1/0"), lehmer::DomainError);
}

TEST_CASE("floor_times is exact at the boundary") {
    CHECK(Proportion(1, 2).floor_times(5) == 2);
    CHECK(Proportion(3, 5).floor_times(5) == 3);
    CHECK(Proportion(3, 5).floor_times(10) == 6);
    // 0.6 * 15 = 9 exactly; floating 0.6 * 15 = 8.999999999999998 in some orders.
    CHECK(Proportion(3, 5).floor_times(15) == 9);
    CHECK(Proportion(1, 3).floor_times(3'000'000'000'000ULL) == 1'000'000'000'000ULL);
    CHECK(Proportion::whole().floor_times(7) == 7);
}

TEST_CASE("ordering is by value") {
    CHECK(Proportion(1, 2) < Proportion(3, 5));
    CHECK(Proportion(2, 4) == Proportion(1, 2));
}
