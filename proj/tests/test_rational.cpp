#include <doctest.h>

#include <random>

#include "grdlab/rational.hpp"
#include "test_util.hpp"

using namespace grdlab;
using grdlab::testing::random_nonzero_rational;
using grdlab::testing::random_rational;

TEST_SUITE("rational") {

TEST_CASE("canonical form") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-1, -2) == Rational(1, 2));
    CHECK(Rational(1, -2).den() == 2);
    CHECK(Rational(1, -2).num() == -1);
    CHECK(Rational(0, 7).den() == 1);
    CHECK(Rational().is_zero());
    CHECK_THROWS_AS(Rational(1, 0), Error);
}

TEST_CASE("parse and print") {
    CHECK(Rational::parse("3") == Rational(3));
    CHECK(Rational::parse("-3/6") == Rational(-1, 2));
    CHECK(Rational::parse("+2/4") == Rational(1, 2));
    CHECK(Rational(-3, 4).str() == "-3/4");
    CHECK(Rational(5).str() == "5");

    for (const char* bad : {"", "abc", "1/0", "1/2/3", "1.5", "2/", "/3", "1 /2", "-"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(Rational::parse(bad), Error);
    }
}

TEST_CASE("round trips and field laws") {
    std::mt19937_64 rng(20220908);
    for (int i = 0; i < 300; ++i) {
        Rational a = random_rational(rng, 1000, 999);
        Rational b = random_nonzero_rational(rng, 1000, 999);
        CHECK(Rational::parse(a.str()) == a);
        CHECK((a + b) - b == a);
        CHECK((a * b) / b == a);
        CHECK(a.pow(3) == a * a * a);
        CHECK(a.pow(0) == Rational(1));
        if (!a.is_zero()) CHECK(a.pow(-2) == Rational(1) / (a * a));
    }
}

TEST_CASE("zero to the zeroth power is one") {
    CHECK(Rational(0).pow(0) == Rational(1));
    CHECK_THROWS_AS(Rational(0).pow(-1), Error);
}

TEST_CASE("ordering") {
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(-1, 2) < Rational(-1, 3));
    CHECK(Rational(7, 7) == Rational(1));
}

TEST_CASE("double conversions") {
    CHECK(Rational::from_double(0.5) == Rational(1, 2));
    CHECK(Rational::from_double(-0.375) == Rational(-3, 8));
    CHECK(Rational::from_double(0.0).is_zero());
    CHECK(Rational(1, 2).to_double() == 0.5);

    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> dist(-1e6, 1e6);
    for (int i = 0; i < 200; ++i) {
        double x = dist(rng);
        CHECK(Rational::from_double(x).to_double() == x);
    }
}

TEST_CASE("integer helpers") {
    CHECK(factorial(0) == 1);
    CHECK(factorial(5) == 120);
    CHECK(binomial(7, 3) == 35);
    CHECK(binomial(4, 0) == 1);
    CHECK(is_power_of_two(BigInt(1)));
    CHECK(is_power_of_two(BigInt(1024)));
    CHECK_FALSE(is_power_of_two(BigInt(0)));
    CHECK_FALSE(is_power_of_two(BigInt(6)));
}

} // TEST_SUITE
