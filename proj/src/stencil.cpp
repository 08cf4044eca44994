#include "grdlab/stencil.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <utility>

#include <json.hpp>

#include "grdlab/vandermonde.hpp"

namespace grdlab {

Stencil Stencil::create(int order, std::vector<Rational> nodes,
                        std::vector<Rational> coefficients) {
    if (order < 0) fail(Errc::invalid_order, "order must be nonnegative");
    const size_t m = static_cast<size_t>(order) + 1;
    if (nodes.size() != m || coefficients.size() != m)
        fail(Errc::arity_mismatch, "stencil of order " + std::to_string(order) +
                                       " needs exactly " + std::to_string(m) + " base points");

    std::vector<size_t> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(),
              [&](size_t a, size_t b) { return nodes[a] < nodes[b]; });
    std::vector<Rational> sn(m), sc(m);
    for (size_t i = 0; i < m; ++i) {
        sn[i] = nodes[perm[i]];
        sc[i] = coefficients[perm[i]];
    }
    for (size_t i = 1; i < m; ++i)
        if (sn[i] == sn[i - 1]) fail(Errc::duplicate_nodes, "duplicate node " + sn[i].str());
    for (const auto& c : sc)
        if (c.is_zero())
            fail(Errc::degenerate_combination, "zero coefficient in stencil");
    if (!residual_is_zero(sc, sn, order))
        fail(Errc::degenerate_combination, "Vandermonde conditions violated");
    return Stencil(unchecked_t{}, order, std::move(sn), std::move(sc));
}

Stencil Stencil::for_nodes(std::vector<Rational> nodes, int order) {
    std::sort(nodes.begin(), nodes.end());
    auto coeffs = solve_vandermonde(nodes, order);
    return Stencil(unchecked_t{}, order, std::move(nodes), std::move(coeffs));
}

const Rational& Stencil::coefficient_at(const Rational& node) const {
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), node);
    if (it == nodes_.end() || !(*it == node))
        fail(Errc::node_not_shared, "node " + node.str() + " is not a base point");
    return coefficients_[static_cast<size_t>(it - nodes_.begin())];
}

bool Stencil::has_node(const Rational& node) const {
    return std::binary_search(nodes_.begin(), nodes_.end(), node);
}

std::string Stencil::to_json_text() const {
    nlohmann::ordered_json j;
    j["order"] = order_;
    auto& jn = j["nodes"] = nlohmann::ordered_json::array();
    for (const auto& v : nodes_) jn.push_back(v.str());
    auto& jc = j["coefficients"] = nlohmann::ordered_json::array();
    for (const auto& v : coefficients_) jc.push_back(v.str());
    return j.dump(2) + "\n";
}

Stencil Stencil::from_json_text(const std::string& text) {
    auto j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("order") || !j.contains("nodes") ||
        !j.contains("coefficients") || !j["order"].is_number_integer() ||
        !j["nodes"].is_array() || !j["coefficients"].is_array())
        fail(Errc::parse_error, "malformed stencil record");
    std::vector<Rational> nodes, coeffs;
    for (const auto& v : j["nodes"]) {
        if (!v.is_string()) fail(Errc::parse_error, "stencil nodes must be strings");
        nodes.push_back(Rational::parse(v.get<std::string>()));
    }
    for (const auto& v : j["coefficients"]) {
        if (!v.is_string()) fail(Errc::parse_error, "stencil coefficients must be strings");
        coeffs.push_back(Rational::parse(v.get<std::string>()));
    }
    return create(j["order"].get<int>(), std::move(nodes), std::move(coeffs));
}

Stencil forward_riemann(int n) {
    if (n < 1) fail(Errc::invalid_order, "forward Riemann difference needs order >= 1");
    const size_t m = static_cast<size_t>(n) + 1;
    std::vector<Rational> nodes(m), coeffs(m);
    for (size_t j = 0; j < m; ++j) {
        nodes[j] = Rational(static_cast<long long>(j));
        // node j carries (-1)^(n-j) * C(n, j)
        BigInt c = binomial(n, static_cast<int>(j));
        coeffs[j] = Rational(((static_cast<size_t>(n) - j) % 2 == 0) ? c : -c);
    }
    return Stencil::create(n, std::move(nodes), std::move(coeffs));
}

Stencil symmetric_riemann(int n) {
    if (n < 1) fail(Errc::invalid_order, "symmetric Riemann difference needs order >= 1");
    const size_t m = static_cast<size_t>(n) + 1;
    std::vector<Rational> nodes(m), coeffs(m);
    for (size_t j = 0; j < m; ++j) {
        nodes[j] = Rational(BigInt(2 * static_cast<long long>(j) - n), BigInt(2));
        BigInt c = binomial(n, static_cast<int>(j));
        coeffs[j] = Rational(((static_cast<size_t>(n) - j) % 2 == 0) ? c : -c);
    }
    return Stencil::create(n, std::move(nodes), std::move(coeffs));
}

Stencil shift(const Stencil& s, const Rational& r) {
    std::vector<Rational> nodes = s.nodes_;
    for (auto& a : nodes) a += r;
    return Stencil(Stencil::unchecked_t{}, s.order_, std::move(nodes), s.coefficients_);
}

std::vector<Stencil> shift_family(int n) {
    if (n < 2) fail(Errc::invalid_order, "shift family needs order >= 2");
    Stencil base = forward_riemann(n);
    std::vector<Stencil> family;
    family.reserve(static_cast<size_t>(n) - 1);
    for (int j = 0; j <= n - 2; ++j) family.push_back(shift(base, Rational(j)));
    return family;
}

Stencil dilate(const Stencil& s, const Rational& r) {
    if (r.is_zero()) fail(Errc::zero_dilation, "dilation factor must be nonzero");
    const size_t m = s.nodes_.size();
    std::vector<Rational> nodes(m), coeffs(m);
    Rational scale = r.pow(-s.order_);
    for (size_t i = 0; i < m; ++i) {
        // negative factors reverse the node order
        size_t src = r.is_negative() ? m - 1 - i : i;
        nodes[i] = s.nodes_[src] * r;
        coeffs[i] = s.coefficients_[src] * scale;
    }
    return Stencil(Stencil::unchecked_t{}, s.order_, std::move(nodes), std::move(coeffs));
}

Stencil eliminate(const Stencil& s, const Stencil& t, const Rational& a) {
    if (s.order_ != t.order_)
        fail(Errc::order_mismatch, "cannot eliminate between orders " +
                                       std::to_string(s.order_) + " and " +
                                       std::to_string(t.order_));
    const int n = s.order_;

    std::vector<Rational> shared;
    std::set_intersection(s.nodes_.begin(), s.nodes_.end(), t.nodes_.begin(), t.nodes_.end(),
                          std::back_inserter(shared));
    if (shared.size() != static_cast<size_t>(n))
        fail(Errc::intersection_not_n, "node sets share " + std::to_string(shared.size()) +
                                           " elements, need exactly " + std::to_string(n));
    if (!std::binary_search(shared.begin(), shared.end(), a))
        fail(Errc::node_not_shared, "node " + a.str() + " is not shared");

    // t_a * s - s_a * t kills the coefficient at `a`.
    const Rational sa = s.coefficient_at(a);
    const Rational ta = t.coefficient_at(a);
    std::map<Rational, Rational> comb;
    for (size_t i = 0; i < s.nodes_.size(); ++i) comb[s.nodes_[i]] += ta * s.coefficients_[i];
    for (size_t i = 0; i < t.nodes_.size(); ++i) comb[t.nodes_[i]] -= sa * t.coefficients_[i];
    for (auto it = comb.begin(); it != comb.end();) {
        if (it->second.is_zero()) it = comb.erase(it);
        else ++it;
    }
    if (comb.size() != static_cast<size_t>(n) + 1 || comb.count(a) != 0)
        fail(Errc::degenerate_combination,
             "combination cancelled more than the shared node " + a.str());

    Rational moment;
    for (const auto& [node, coeff] : comb) moment += coeff * node.pow(n);
    if (moment.is_zero())
        fail(Errc::degenerate_combination, "order-" + std::to_string(n) + " moment vanished");
    Rational scale = Rational(factorial(n)) / moment;

    std::vector<Rational> nodes, coeffs;
    nodes.reserve(comb.size());
    coeffs.reserve(comb.size());
    for (const auto& [node, coeff] : comb) {
        nodes.push_back(node);
        coeffs.push_back(coeff * scale);
    }
    return Stencil(Stencil::unchecked_t{}, n, std::move(nodes), std::move(coeffs));
}

MzDifference mz_difference(int n) {
    if (n < 1) fail(Errc::invalid_order, "order must be >= 1");

    // d_1(h) = f(x+h) - f(x); d_k(h) = d_{k-1}(2h) - 2^(k-1) d_{k-1}(h).
    std::map<Rational, Rational> acc;
    acc[Rational(0)] = Rational(-1);
    acc[Rational(1)] = Rational(1);
    for (int k = 2; k <= n; ++k) {
        std::map<Rational, Rational> next;
        Rational two_pow = Rational(BigInt(1) << (k - 1));
        for (const auto& [node, coeff] : acc) {
            next[node * Rational(2)] += coeff;
            next[node] -= two_pow * coeff;
        }
        for (auto it = next.begin(); it != next.end();) {
            if (it->second.is_zero()) it = next.erase(it);
            else ++it;
        }
        acc = std::move(next);
    }

    RawDifference raw;
    raw.order = n;
    for (const auto& [node, coeff] : acc) {
        raw.nodes.push_back(node);
        raw.coefficients.push_back(coeff);
    }

    Rational moment;
    for (size_t i = 0; i < raw.nodes.size(); ++i)
        moment += raw.coefficients[i] * raw.nodes[i].pow(n);
    if (moment.is_zero()) fail(Errc::internal, "vanishing moment in recursion");
    Rational lambda = Rational(factorial(n)) / moment;

    std::vector<Rational> coeffs;
    coeffs.reserve(raw.coefficients.size());
    for (const auto& c : raw.coefficients) coeffs.push_back(c * lambda);
    Stencil normalized = Stencil::create(n, raw.nodes, std::move(coeffs));
    return MzDifference{std::move(raw), std::move(lambda), std::move(normalized)};
}

} // namespace grdlab
