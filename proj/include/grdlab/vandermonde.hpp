#pragma once

#include <vector>

#include "grdlab/rational.hpp"

namespace grdlab {

// Coefficients A_i with sum_i A_i a_i^j = n! * delta_{j,n} for j = 0..n,
// aligned to the nodes sorted ascending. The n+1 nodes must be pairwise
// distinct; the solution is unique. 0^0 counts as 1.
//
// Solved by fraction-free (Bareiss) Gaussian elimination on the transposed
// power system after clearing node denominators.
std::vector<Rational> solve_vandermonde(const std::vector<Rational>& nodes, int order);

// Entry j = sum_i A_i a_i^j - n! * delta_{j,n}, computed exactly, for
// j = 0..order. All-zero exactly when (coefficients, nodes) satisfies the
// order-n conditions.
std::vector<Rational> vandermonde_residual(const std::vector<Rational>& coefficients,
                                           const std::vector<Rational>& nodes, int order);

bool residual_is_zero(const std::vector<Rational>& coefficients,
                      const std::vector<Rational>& nodes, int order);

} // namespace grdlab
