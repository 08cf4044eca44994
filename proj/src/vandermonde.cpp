#include "grdlab/vandermonde.hpp"

#include <algorithm>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

namespace grdlab {

namespace mp = boost::multiprecision;

namespace {

// Clears denominators: returns integer values v_i with x_i = v_i / L.
std::pair<std::vector<BigInt>, BigInt> scale_to_integers(const std::vector<Rational>& xs) {
    BigInt scale = 1;
    for (const auto& x : xs) scale = mp::lcm(scale, x.den());
    std::vector<BigInt> out;
    out.reserve(xs.size());
    for (const auto& x : xs) out.push_back(x.num() * (scale / x.den()));
    return {std::move(out), std::move(scale)};
}

} // namespace

std::vector<Rational> solve_vandermonde(const std::vector<Rational>& nodes, int order) {
    if (order < 0) fail(Errc::invalid_order, "order must be nonnegative");
    const size_t m = static_cast<size_t>(order) + 1;
    if (nodes.size() != m)
        fail(Errc::arity_mismatch, "expected " + std::to_string(m) + " nodes, got " +
                                       std::to_string(nodes.size()));

    std::vector<Rational> sorted = nodes;
    std::sort(sorted.begin(), sorted.end());
    for (size_t i = 1; i < m; ++i)
        if (sorted[i] == sorted[i - 1])
            fail(Errc::duplicate_nodes, "duplicate node " + sorted[i].str());

    auto [ints, scale] = scale_to_integers(sorted);

    // Augmented system rows j = 0..n: sum_i A_i v_i^j = n! * L^n * delta_{j,n}.
    std::vector<std::vector<BigInt>> mat(m, std::vector<BigInt>(m + 1, 0));
    std::vector<BigInt> pw(m, 1);
    for (size_t j = 0; j < m; ++j) {
        for (size_t i = 0; i < m; ++i) {
            mat[j][i] = pw[i];
            pw[i] *= ints[i];
        }
    }
    BigInt npow = 1;
    for (int k = 0; k < order; ++k) npow *= scale;
    mat[m - 1][m] = factorial(order) * npow;

    // Bareiss elimination. Leading minors of a Vandermonde matrix on distinct
    // nodes are nonzero, so the swap below is unreachable on valid input.
    BigInt prev = 1;
    for (size_t k = 0; k + 1 < m; ++k) {
        if (mat[k][k] == 0) {
            size_t swap_row = k + 1;
            while (swap_row < m && mat[swap_row][k] == 0) ++swap_row;
            if (swap_row == m) fail(Errc::internal, "singular Vandermonde system");
            std::swap(mat[k], mat[swap_row]);
        }
        for (size_t r = k + 1; r < m; ++r) {
            for (size_t c = k + 1; c <= m; ++c)
                mat[r][c] = (mat[k][k] * mat[r][c] - mat[r][k] * mat[k][c]) / prev;
            mat[r][k] = 0;
        }
        prev = mat[k][k];
    }

    std::vector<Rational> coeffs(m);
    for (size_t ii = m; ii-- > 0;) {
        Rational acc{mat[ii][m]};
        for (size_t c = ii + 1; c < m; ++c) acc -= Rational(mat[ii][c]) * coeffs[c];
        coeffs[ii] = acc / Rational(mat[ii][ii]);
    }
    return coeffs;
}

std::vector<Rational> vandermonde_residual(const std::vector<Rational>& coefficients,
                                           const std::vector<Rational>& nodes, int order) {
    if (order < 0) fail(Errc::invalid_order, "order must be nonnegative");
    if (coefficients.size() != nodes.size())
        fail(Errc::arity_mismatch, "coefficient/node length mismatch");

    // Integer core: with A_i = C_i/D and a_i = v_i/L,
    // sum_i A_i a_i^j = (sum_i C_i v_i^j) / (D * L^j).
    auto [cints, cden] = scale_to_integers(coefficients);
    auto [vints, vden] = scale_to_integers(nodes);

    std::vector<Rational> res(static_cast<size_t>(order) + 1);
    std::vector<BigInt> pw(nodes.size(), 1);
    BigInt lpow = 1;
    for (int j = 0; j <= order; ++j) {
        BigInt sum = 0;
        for (size_t i = 0; i < nodes.size(); ++i) {
            sum += cints[i] * pw[i];
            pw[i] *= vints[i];
        }
        res[static_cast<size_t>(j)] = Rational(sum, cden * lpow);
        lpow *= vden;
    }
    res[static_cast<size_t>(order)] -= Rational(factorial(order));
    return res;
}

bool residual_is_zero(const std::vector<Rational>& coefficients,
                      const std::vector<Rational>& nodes, int order) {
    for (const auto& r : vandermonde_residual(coefficients, nodes, order))
        if (!r.is_zero()) return false;
    return true;
}

} // namespace grdlab
