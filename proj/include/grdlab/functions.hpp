#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "grdlab/rational.hpp"

namespace grdlab {

// A test function with two evaluators. The exact evaluator is partial: it
// returns a value only where that value is rational; wherever it is defined
// the float evaluator agrees up to representation rounding.
struct TestFunction {
    std::string name;
    std::function<std::optional<Rational>(const Rational&)> exact;
    std::function<double(double)> real;
    std::string notes;
};

// q = 2^m * 3^k with integer (possibly negative) exponents, when the 2,3-free
// part of q is 1; empty otherwise. Requires q > 0.
std::optional<std::pair<long long, long long>> in_group_23(const Rational& q);

// Mini-language:
//   poly:<expr>   integer-coefficient polynomial in x, e.g. poly:x^3 - 2*x + 1
//   parity:<n>    x^(n-1/2) for x >= 0, (-1)^(n-1) (-x)^(n-1/2) for x < 0
//   sgn           sign function
//   x3sin         x^3 sin(1/x), extended by 0 at 0
//   group23       (-1)^(m+k) x^3 on x = 2^m 3^k, 0 elsewhere
//   exp           smooth reference, float only
TestFunction lookup_function(const std::string& spec);

TestFunction make_poly(const std::string& expr);
TestFunction make_parity(int n);
TestFunction sgn_function();
TestFunction x3sin_function();
TestFunction group23_function();
TestFunction exp_function();

// A fixed sample of the catalog (representative family members included).
std::vector<TestFunction> builtin_functions();

} // namespace grdlab
