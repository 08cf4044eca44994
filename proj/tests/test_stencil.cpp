#include <doctest.h>

#include <algorithm>
#include <random>

#include "grdlab/stencil.hpp"
#include "grdlab/vandermonde.hpp"
#include "test_util.hpp"

using namespace grdlab;
using namespace grdlab::testing;

namespace {

std::vector<Rational> rats(std::initializer_list<long long> vs) {
    std::vector<Rational> out;
    for (long long v : vs) out.emplace_back(v);
    return out;
}

bool satisfies_conditions(const Stencil& s) {
    return residual_is_zero(s.coefficients(), s.nodes(), s.order());
}

} // namespace

TEST_SUITE("stencils") {

TEST_CASE("forward differences") {
    auto d1 = forward_riemann(1);
    CHECK(d1.nodes() == rats({0, 1}));
    CHECK(d1.coefficients() == rats({-1, 1}));

    auto d2 = forward_riemann(2);
    CHECK(d2.nodes() == rats({0, 1, 2}));
    CHECK(d2.coefficients() == rats({1, -2, 1}));

    auto d3 = forward_riemann(3);
    CHECK(d3.coefficients() == rats({-1, 3, -3, 1}));

    CHECK_THROWS_WITH_AS(forward_riemann(0), doctest::Contains("InvalidOrder"), Error);
}

TEST_CASE("symmetric differences") {
    auto s2 = symmetric_riemann(2);
    CHECK(s2.nodes() == rats({-1, 0, 1}));
    CHECK(s2.coefficients() == rats({1, -2, 1}));

    auto s1 = symmetric_riemann(1);
    CHECK(s1.nodes() == std::vector<Rational>{Rational(-1, 2), Rational(1, 2)});
    CHECK(s1.coefficients() == rats({-1, 1}));

    auto s3 = symmetric_riemann(3);
    CHECK(s3.nodes() == std::vector<Rational>{Rational(-3, 2), Rational(-1, 2), Rational(1, 2),
                                              Rational(3, 2)});
    CHECK(s3.coefficients() == rats({-1, 3, -3, 1}));

    CHECK_THROWS_AS(symmetric_riemann(0), Error);
}

TEST_CASE("shift") {
    auto d3 = forward_riemann(3);
    auto s = shift(d3, Rational(1));
    CHECK(s.nodes() == rats({1, 2, 3, 4}));
    CHECK(s.coefficients() == d3.coefficients());
    CHECK(satisfies_conditions(s));
    CHECK(shift(d3, Rational(0)) == d3);
    CHECK(shift(shift(d3, Rational(5, 3)), Rational(-5, 3)) == d3);
}

TEST_CASE("shift family") {
    CHECK(shift_family(2) == std::vector<Stencil>{forward_riemann(2)});

    auto fam3 = shift_family(3);
    REQUIRE(fam3.size() == 2);
    CHECK(fam3[0].nodes() == rats({0, 1, 2, 3}));
    CHECK(fam3[1].nodes() == rats({1, 2, 3, 4}));

    auto fam4 = shift_family(4);
    REQUIRE(fam4.size() == 3);
    CHECK(fam4[2].nodes() == rats({2, 3, 4, 5, 6}));

    CHECK_THROWS_AS(shift_family(1), Error);
}

TEST_CASE("dilate") {
    auto d1 = forward_riemann(1);
    auto doubled = dilate(d1, Rational(2));
    CHECK(doubled.nodes() == rats({0, 2}));
    CHECK(doubled.coefficients() == std::vector<Rational>{Rational(-1, 2), Rational(1, 2)});

    auto d3 = forward_riemann(3);
    CHECK(dilate(d3, Rational(1)) == d3);
    CHECK(dilate(dilate(d3, Rational(2)), Rational(1, 2)) == d3);
    CHECK(satisfies_conditions(dilate(d3, Rational(-5, 7))));
    CHECK_THROWS_WITH_AS(dilate(d3, Rational(0)), doctest::Contains("ZeroDilation"), Error);
}

TEST_CASE("ops keep the conditions exactly") {
    std::mt19937_64 rng(77);
    for (int iter = 0; iter < 40; ++iter) {
        std::uniform_int_distribution<int> order_dist(1, 6);
        Stencil s = forward_riemann(order_dist(rng));
        for (int hop = 0; hop < 4; ++hop) {
            if (rng() & 1) s = shift(s, random_rational(rng, 6, 4));
            else s = dilate(s, random_nonzero_rational(rng, 6, 4));
            REQUIRE(satisfies_conditions(s));
        }
    }
}

TEST_CASE("eliminate reproduces the geometric 4-point stencil") {
    auto fam = shift_family(3);
    auto combined = eliminate(fam[0], fam[1], Rational(3));
    CHECK(combined.nodes() == rats({0, 1, 2, 4}));
    CHECK(combined == mz_difference(3).stencil);
    CHECK(combined.coefficients() ==
          std::vector<Rational>{Rational(-3, 4), Rational(2), Rational(-3, 2), Rational(1, 4)});

    SUBCASE("symmetric in its stencil arguments") {
        CHECK(eliminate(fam[1], fam[0], Rational(3)) == combined);
    }
}

TEST_CASE("eliminate agrees with the direct solution on the merged nodes") {
    // two stencils on overlapping (n+1)-subsets of an (n+2)-point pool;
    // eliminating any shared node must land on the unique stencil of the
    // union minus that node
    std::mt19937_64 rng(3141);
    int done = 0;
    while (done < 30) {
        std::uniform_int_distribution<int> order_dist(1, 6);
        const int n = order_dist(rng);
        auto pool = random_distinct_nodes(rng, static_cast<size_t>(n) + 2, 20, 6);
        std::vector<Rational> a(pool.begin(), pool.end() - 1); // drop the last
        std::vector<Rational> b(pool.begin() + 1, pool.end()); // drop the first
        auto s = Stencil::for_nodes(a, n);
        auto t = Stencil::for_nodes(b, n);
        std::uniform_int_distribution<size_t> pick(1, static_cast<size_t>(n));
        const Rational shared = pool[pick(rng)];
        Stencil combined = [&] {
            try {
                return eliminate(s, t, shared);
            } catch (const Error& e) {
                // the combination may cancel extra nodes for unlucky pools
                REQUIRE(e.code() == Errc::degenerate_combination);
                return s;
            }
        }();
        if (combined == s) continue;
        std::vector<Rational> merged = pool;
        merged.erase(std::find(merged.begin(), merged.end(), shared));
        CHECK(combined == Stencil::for_nodes(merged, n));
        ++done;
    }
}

TEST_CASE("eliminate errors") {
    auto fam4 = shift_family(4);
    CHECK_THROWS_WITH_AS(eliminate(fam4[0], forward_riemann(3), Rational(3)),
                         doctest::Contains("OrderMismatch"), Error);
    // {0..4} and {2..6} share only three elements
    CHECK_THROWS_WITH_AS(eliminate(fam4[0], fam4[2], Rational(3)),
                         doctest::Contains("IntersectionNotN"), Error);
    // 5 is not in the intersection of {0..4} and {1..5}
    CHECK_THROWS_WITH_AS(eliminate(fam4[0], fam4[1], Rational(5)),
                         doctest::Contains("NodeNotShared"), Error);
}

TEST_CASE("recursion tables") {
    auto m1 = mz_difference(1);
    CHECK(m1.raw.nodes == rats({0, 1}));
    CHECK(m1.raw.coefficients == rats({-1, 1}));
    CHECK(m1.lambda == Rational(1));

    auto m2 = mz_difference(2);
    CHECK(m2.raw.nodes == rats({0, 1, 2}));
    CHECK(m2.raw.coefficients == rats({1, -2, 1}));
    CHECK(m2.lambda == Rational(1));

    auto m3 = mz_difference(3);
    CHECK(m3.raw.nodes == rats({0, 1, 2, 4}));
    CHECK(m3.raw.coefficients == rats({-3, 8, -6, 1}));
    CHECK(m3.lambda == Rational(1, 4));

    auto m4 = mz_difference(4);
    CHECK(m4.raw.nodes == rats({0, 1, 2, 4, 8}));
    CHECK(m4.raw.coefficients == rats({21, -64, 56, -14, 1}));
    CHECK(m4.lambda == Rational(1, 56));

    auto m5 = mz_difference(5);
    CHECK(m5.raw.nodes == rats({0, 1, 2, 4, 8, 16}));
    CHECK(m5.raw.coefficients == rats({-315, 1024, -960, 280, -30, 1}));
    CHECK(m5.lambda == Rational(1, 2688));

    CHECK_THROWS_AS(mz_difference(0), Error);
}

TEST_CASE("raw difference satisfies the lower conditions with a nonzero moment") {
    for (int n = 2; n <= 10; ++n) {
        auto mz = mz_difference(n);
        auto res = vandermonde_residual(mz.raw.coefficients, mz.raw.nodes, n);
        for (int j = 0; j < n; ++j) CHECK(res[static_cast<size_t>(j)].is_zero());
        // the order-n moment is res[n] + n!; nonzero means a unique scalar fixes it
        CHECK(res[static_cast<size_t>(n)] != Rational(-factorial(n)));
        if (n > 2) CHECK_FALSE(res[static_cast<size_t>(n)].is_zero()); // scale 1 only below 3
    }
}

TEST_CASE("normalized recursion equals the unique solution, n = 2..16") {
    for (int n = 2; n <= 16; ++n) {
        auto mz = mz_difference(n);
        CAPTURE(n);
        CHECK(mz.stencil == Stencil::for_nodes(mz.stencil.nodes(), n));
    }
}

TEST_CASE("recursion node set is {0,1,2} plus the powers of two") {
    for (int n = 3; n <= 16; ++n) {
        std::vector<Rational> expect = rats({0, 1, 2});
        for (int k = 2; k < n; ++k) expect.emplace_back(BigInt(1) << k);
        CHECK(mz_difference(n).stencil.nodes() == expect);
    }
}

TEST_CASE("json round trip") {
    auto s = mz_difference(4).stencil;
    auto text = s.to_json_text();
    CHECK(Stencil::from_json_text(text) == s);
    CHECK(s.to_json_text() == text); // deterministic bytes

    CHECK_THROWS_WITH_AS(Stencil::from_json_text("{not json"), doctest::Contains("ParseError"),
                         Error);
    CHECK_THROWS_AS(Stencil::from_json_text("{\"order\": 1, \"nodes\": [\"0\", \"1\"], "
                                            "\"coefficients\": [\"1\", \"1\"]}"),
                    Error); // conditions violated
}

TEST_CASE("create validates") {
    CHECK_THROWS_AS(Stencil::create(1, rats({0, 0}), rats({-1, 1})), Error);
    CHECK_THROWS_AS(Stencil::create(1, rats({0, 1}), rats({0, 1})), Error);
    CHECK_THROWS_AS(Stencil::create(1, rats({0, 1}), rats({-2, 1})), Error);
    // unsorted pairs are fine, the pairing is preserved
    auto s = Stencil::create(1, rats({1, 0}), rats({1, -1}));
    CHECK(s == forward_riemann(1));
}

} // TEST_SUITE
