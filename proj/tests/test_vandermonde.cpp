#include <doctest.h>

#include <random>

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

} // namespace

TEST_SUITE("exact_linalg") {

TEST_CASE("known solutions") {
    CHECK(solve_vandermonde(rats({0, 1}), 1) == rats({-1, 1}));
    CHECK(solve_vandermonde(rats({-1, 0, 1}), 2) == rats({1, -2, 1}));
    CHECK(solve_vandermonde(rats({0, 1, 2, 3}), 3) == rats({-1, 3, -3, 1}));

    auto weights = solve_vandermonde(rats({0, 1, 2, 4}), 3);
    CHECK(weights == std::vector<Rational>{Rational(-3, 4), Rational(2), Rational(-3, 2),
                                           Rational(1, 4)});
}

TEST_CASE("order zero") {
    CHECK(solve_vandermonde({Rational(7, 3)}, 0) == rats({1}));
}

TEST_CASE("unsorted input is aligned to ascending nodes") {
    CHECK(solve_vandermonde(rats({1, 0}), 1) == rats({-1, 1}));
}

TEST_CASE("errors") {
    CHECK_THROWS_WITH_AS(solve_vandermonde(rats({0, 1}), 2), doctest::Contains("ArityMismatch"),
                         Error);
    CHECK_THROWS_WITH_AS(solve_vandermonde(rats({0, 1, 1}), 2),
                         doctest::Contains("DuplicateNodes"), Error);
    CHECK_THROWS_AS(vandermonde_residual(rats({1, 2}), rats({0, 1, 2}), 2), Error);
}

TEST_CASE("residual diagnostics") {
    CHECK(vandermonde_residual(rats({-1, 1}), rats({0, 1}), 1) == rats({0, 0}));
    CHECK(vandermonde_residual(rats({1, 1}), rats({0, 1}), 1) == rats({2, 0}));
}

TEST_CASE("solve agrees with the Lagrange-form oracle") {
    std::mt19937_64 rng(1936);
    for (int iter = 0; iter < 100; ++iter) {
        std::uniform_int_distribution<int> order_dist(0, 8);
        int n = order_dist(rng);
        auto nodes = random_distinct_nodes(rng, static_cast<size_t>(n) + 1);
        CAPTURE(n);
        CHECK(solve_vandermonde(nodes, n) == lagrange_weights(nodes, n));
    }
}

TEST_CASE("round trip and uniqueness by perturbation") {
    std::mt19937_64 rng(409);
    for (int iter = 0; iter < 100; ++iter) {
        std::uniform_int_distribution<int> order_dist(1, 8);
        int n = order_dist(rng);
        auto nodes = random_distinct_nodes(rng, static_cast<size_t>(n) + 1);
        auto coeffs = solve_vandermonde(nodes, n);
        REQUIRE(residual_is_zero(coeffs, nodes, n));

        std::uniform_int_distribution<size_t> pick(0, coeffs.size() - 1);
        auto perturbed = coeffs;
        perturbed[pick(rng)] += random_nonzero_rational(rng);
        CHECK_FALSE(residual_is_zero(perturbed, nodes, n));
    }
}

} // TEST_SUITE
