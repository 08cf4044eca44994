#pragma once

#include <optional>
#include <string>
#include <vector>

#include "grdlab/functions.hpp"
#include "grdlab/stencil.hpp"

namespace grdlab {

enum class EvalMode { exact, floating };

// What a difference quotient needs: base points, weights and the power of h.
// Stencils convert losslessly; raw_ratio(n) is the plain f(x+h)/h^n probe.
struct QuotientForm {
    std::string id;
    int order = 0;
    std::vector<Rational> nodes;
    std::vector<Rational> coefficients;

    static QuotientForm of(const Stencil& s, std::string id);
    static QuotientForm raw_ratio(int order);
};

// sum_i A_i f(x + a_i h) / h^n, exactly. Requires h != 0 and an exact value
// of f at every base point (Error(exact_unavailable) otherwise).
Rational evaluate_quotient_exact(const QuotientForm& q, const TestFunction& f,
                                 const Rational& x, const Rational& h);

// Same quotient in doubles: terms summed in ascending node order with
// Neumaier-compensated summation, then divided by h^n.
double evaluate_quotient_float(const QuotientForm& q, const TestFunction& f,
                               const Rational& x, const Rational& h);

struct SweepParams {
    Rational h0 = Rational(1, 2);
    Rational ratio = Rational(1, 2); // 0 < ratio < 1
    int count = 40;                  // >= 3
    double tol = 1e-6;               // > 0
    EvalMode mode = EvalMode::floating;
};

struct Sample {
    Rational h;
    bool ok = false;
    std::string error;                  // set when !ok
    double value = 0.0;                 // quotient as double
    std::optional<Rational> exact_value;
    std::optional<double> gap;          // |value - previous value|
};

enum class Verdict { converged, not_converged, incomplete };

const char* verdict_name(Verdict v);

struct EstimateReport {
    std::string stencil_id;
    std::string function_name;
    Rational x;
    int order = 0;
    SweepParams params;
    std::vector<Sample> samples;
    Verdict verdict = Verdict::incomplete;
    double limit = 0.0;                   // final quotient
    std::optional<Rational> exact_limit;
    std::vector<double> cluster_values;   // quotient clusters within tol, ascending

    std::string to_json_text() const;
    std::string to_csv() const; // columns h, quotient, gap
};

// h-sweep h0 * ratio^k, k = 0..count-1. Verdict is `converged` iff the last
// three consecutive gaps are all < tol (all existing gaps when count < 4);
// a failed sample makes the report `incomplete`.
EstimateReport estimate_limit(const QuotientForm& q, const TestFunction& f, const Rational& x,
                              const SweepParams& params);

struct ShiftFamilyReport {
    int order = 0;
    std::vector<EstimateReport> reports; // one per translate j = 0..n-2
    bool agreement = false; // all converged with pairwise limits within tol
};

ShiftFamilyReport shift_family_report(int n, const TestFunction& f, const Rational& x,
                                      const SweepParams& params);

enum class ProfileMethod { mz, shifts };

struct PeanoEntry {
    int order = 0;
    bool converged = false;  // for shifts: converged and in agreement
    double value = 0.0;
    std::optional<Rational> exact_value;
    std::vector<EstimateReport> reports; // 1 report (mz / order 1) or the family
};

// Estimates of the derivatives of f at x up to order n. Method mz uses the
// geometric-node stencil of each order; method shifts uses the full translate
// family per order with agreement checking.
std::vector<PeanoEntry> peano_profile(const TestFunction& f, const Rational& x, int n,
                                      ProfileMethod method, const SweepParams& params);

struct ConditioningReport {
    std::string stencil_id;
    Rational abs_sum;      // sum |A_i|, exact
    double abs_sum_float = 0.0;
    Rational max_abs;
    Rational span;         // max node - min node
    int node_count = 0;

    std::string to_json_text() const;
    std::string to_csv() const;
};

ConditioningReport conditioning_report(const Stencil& s, std::string id = "stencil");

struct MethodSummary {
    int limits = 0;          // limits to evaluate
    int stencil_nodes = 0;   // base points per stencil
    int distinct_points = 0; // distinct base points over all stencils
    Rational min_point;
    Rational max_point;
    Rational span;           // max - min over all base points
    Rational abs_sum;        // sum |A_i| per stencil (the families are uniform)
};

struct ComparisonTable {
    int order = 0;
    MethodSummary mz;
    MethodSummary shifts;
};

// Geometric-node stencil vs. the translate family at the same order.
ComparisonTable compare_methods(int order);

} // namespace grdlab
