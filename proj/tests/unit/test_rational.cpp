#include "polysum/rational.hpp"

#include "polysum/errors.hpp"
#include "polysum/rng.hpp"

#include <doctest.h>

using namespace polysum;

TEST_CASE("canonical form is maintained") {
    Rational q(6, -4);
    CHECK(q.num() == -3);
    CHECK(q.den() == 2);
    CHECK(q.str() == "-3/2");

    Rational z(0, 7);
    CHECK(z.is_zero());
    CHECK(z.str() == "0");

    CHECK((Rational(1, 3) + Rational(1, 6)).str() == "1/2");
    CHECK((Rational(2, 3) * Rational(3, 2)).str() == "1");
    CHECK((Rational(1) / Rational(-2)).str() == "-1/2");
}

TEST_CASE("zero denominators and division by zero are rejected") {
    CHECK_THROWS_AS(Rational(1, 0), ContractError);
    CHECK_THROWS_AS(Rational(1) / Rational(0), ContractError);
}

TEST_CASE("parsing accepts optional sign and rejects junk") {
    CHECK(Rational::parse("3/4")->str() == "3/4");
    CHECK(Rational::parse("-3/4")->str() == "-3/4");
    CHECK(Rational::parse("+3")->str() == "3");
    CHECK(Rational::parse("6/4")->str() == "3/2");
    CHECK(Rational::parse("-0")->str() == "0");
    CHECK_FALSE(Rational::parse("1/0").has_value());
    CHECK_FALSE(Rational::parse("").has_value());
    CHECK_FALSE(Rational::parse("1.5").has_value());
    CHECK_FALSE(Rational::parse("1/").has_value());
    CHECK_FALSE(Rational::parse("/2").has_value());
    CHECK_FALSE(Rational::parse("3/4x").has_value());
    CHECK_FALSE(Rational::parse(" 1").has_value());
}

TEST_CASE("string round trip on random values") {
    SplitMix64 rng(11);
    for (int i = 0; i < 200; ++i) {
        Rational q(rng.range(-50, 50), rng.range(1, 30));
        auto back = Rational::parse(q.str());
        REQUIRE(back.has_value());
        CHECK(*back == q);
    }
}

TEST_CASE("ordering and absolute value") {
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(-1, 2) < Rational(0));
    CHECK(Rational(5, 10) == Rational(1, 2));
    CHECK(Rational(7, 2).abs() == Rational(7, 2));
    CHECK(Rational(-7, 2).abs() == Rational(7, 2));
}

TEST_CASE("vector helpers") {
    Vec a{Rational(1), Rational(2)};
    Vec b{Rational(3), Rational(-1)};
    CHECK(dot(a, b) == Rational(1));
    CHECK(lex_less(a, b));
    CHECK(support_of(Vec{Rational(0), Rational(2), Rational(0)}) ==
          std::vector<std::size_t>{1});
}
