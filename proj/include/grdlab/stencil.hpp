#pragma once

#include <string>
#include <vector>

#include "grdlab/rational.hpp"

namespace grdlab {

// A generalized Riemann difference of order n on n+1 distinct base points:
// strictly increasing rational nodes a_i with coefficients A_i satisfying the
// order-n Vandermonde conditions exactly. No coefficient is zero (a zero
// coefficient would mean the node is not a base point).
class Stencil {
public:
    // Validates everything: sorts (node, coefficient) pairs ascending, then
    // checks distinctness, nonzero coefficients and a zero residual.
    static Stencil create(int order, std::vector<Rational> nodes,
                          std::vector<Rational> coefficients);

    // The unique stencil on the given distinct nodes.
    static Stencil for_nodes(std::vector<Rational> nodes, int order);

    int order() const { return order_; }
    const std::vector<Rational>& nodes() const { return nodes_; }
    const std::vector<Rational>& coefficients() const { return coefficients_; }

    const Rational& coefficient_at(const Rational& node) const;
    bool has_node(const Rational& node) const;

    bool operator==(const Stencil& o) const = default;

    std::string to_json_text() const;
    static Stencil from_json_text(const std::string& text);

private:
    struct unchecked_t {};
    Stencil(unchecked_t, int order, std::vector<Rational> nodes,
            std::vector<Rational> coefficients)
        : order_(order), nodes_(std::move(nodes)), coefficients_(std::move(coefficients)) {}

    friend Stencil shift(const Stencil&, const Rational&);
    friend Stencil dilate(const Stencil&, const Rational&);
    friend Stencil eliminate(const Stencil&, const Stencil&, const Rational&);

    int order_ = 0;
    std::vector<Rational> nodes_;
    std::vector<Rational> coefficients_;
};

// Nodes 0..n with (-1)^i * C(n,i) at node n-i. Order n >= 1.
Stencil forward_riemann(int n);

// Nodes n/2 - i (half-integers for odd n) with (-1)^i * C(n,i). Order n >= 1.
Stencil symmetric_riemann(int n);

// Every node translated by r, coefficients unchanged.
Stencil shift(const Stencil& s, const Rational& r);

// The n-1 consecutive forward translates of forward_riemann(n), j = 0..n-2.
std::vector<Stencil> shift_family(int n);

// Nodes scaled by r != 0, coefficients scaled by r^(-n).
Stencil dilate(const Stencil& s, const Rational& r);

// The unique (up to scale) combination of s and t whose coefficient at the
// shared node `a` vanishes, rescaled so the order-n moment is n! again.
// Requires equal orders, node sets sharing exactly n elements, and `a` in the
// intersection. The result lives on (nodes(s) | nodes(t)) \ {a}.
Stencil eliminate(const Stencil& s, const Stencil& t, const Rational& a);

// An order-n difference whose conditions hold for j <= n-1 while the order-n
// moment is nonzero (so a unique scalar multiple is a true stencil).
struct RawDifference {
    int order = 0;
    std::vector<Rational> nodes;
    std::vector<Rational> coefficients;
};

struct MzDifference {
    RawDifference raw;   // built by d_n(h) = d_{n-1}(2h) - 2^(n-1) d_{n-1}(h)
    Rational lambda;     // n! divided by the order-n moment of raw
    Stencil stencil;     // lambda * raw, on nodes {0, 1, 2, 4, ..., 2^(n-1)}
};

MzDifference mz_difference(int n);

} // namespace grdlab
