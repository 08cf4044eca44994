#include "grdlab/estimate.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include <json.hpp>

namespace grdlab {

namespace {

std::string fmt_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

} // namespace

const char* verdict_name(Verdict v) {
    switch (v) {
    case Verdict::converged: return "converged";
    case Verdict::not_converged: return "not-converged";
    case Verdict::incomplete: return "incomplete";
    }
    return "unknown";
}

QuotientForm QuotientForm::of(const Stencil& s, std::string id) {
    return QuotientForm{std::move(id), s.order(), s.nodes(), s.coefficients()};
}

QuotientForm QuotientForm::raw_ratio(int order) {
    return QuotientForm{"ratio(" + std::to_string(order) + ")", order, {Rational(1)},
                        {Rational(1)}};
}

Rational evaluate_quotient_exact(const QuotientForm& q, const TestFunction& f,
                                 const Rational& x, const Rational& h) {
    if (h.is_zero()) fail(Errc::zero_step, "h must be nonzero");
    Rational sum;
    for (size_t i = 0; i < q.nodes.size(); ++i) {
        auto value = f.exact(x + q.nodes[i] * h);
        if (!value)
            fail(Errc::exact_unavailable, f.name + " has no exact value at " +
                                              (x + q.nodes[i] * h).str());
        sum += q.coefficients[i] * *value;
    }
    return sum / h.pow(q.order);
}

double evaluate_quotient_float(const QuotientForm& q, const TestFunction& f,
                               const Rational& x, const Rational& h) {
    if (h.is_zero()) fail(Errc::zero_step, "h must be nonzero");
    const double xd = x.to_double();
    const double hd = h.to_double();
    double sum = 0.0, comp = 0.0;
    for (size_t i = 0; i < q.nodes.size(); ++i) {
        const double term = q.coefficients[i].to_double() * f.real(xd + q.nodes[i].to_double() * hd);
        // Neumaier update
        const double t = sum + term;
        if (std::fabs(sum) >= std::fabs(term)) comp += (sum - t) + term;
        else comp += (term - t) + sum;
        sum = t;
    }
    return (sum + comp) / h.pow(q.order).to_double();
}

namespace {

std::vector<double> cluster_quotients(const std::vector<Sample>& samples, double tol) {
    std::vector<double> values;
    for (const auto& s : samples)
        if (s.ok) values.push_back(s.value);
    std::sort(values.begin(), values.end());
    std::vector<double> clusters;
    size_t i = 0;
    while (i < values.size()) {
        size_t j = i + 1;
        double sum = values[i];
        while (j < values.size() && values[j] - values[j - 1] <= tol) {
            sum += values[j];
            ++j;
        }
        clusters.push_back(sum / static_cast<double>(j - i));
        i = j;
    }
    return clusters;
}

} // namespace

EstimateReport estimate_limit(const QuotientForm& q, const TestFunction& f, const Rational& x,
                              const SweepParams& params) {
    if (!(params.ratio > Rational(0) && params.ratio < Rational(1)))
        fail(Errc::parse_error, "ratio must lie in (0, 1)");
    if (params.count < 3) fail(Errc::parse_error, "count must be >= 3");
    if (!(params.tol > 0)) fail(Errc::parse_error, "tol must be positive");
    if (params.h0.is_zero()) fail(Errc::zero_step, "h0 must be nonzero");

    EstimateReport report;
    report.stencil_id = q.id;
    report.function_name = f.name;
    report.x = x;
    report.order = q.order;
    report.params = params;

    const Rational tol_exact = Rational::from_double(params.tol);
    bool all_ok = true;
    std::optional<Rational> prev_exact;
    std::optional<double> prev_value;
    std::vector<bool> gap_small;

    Rational h = params.h0;
    for (int k = 0; k < params.count; ++k, h *= params.ratio) {
        Sample s;
        s.h = h;
        try {
            if (params.mode == EvalMode::exact) {
                Rational value = evaluate_quotient_exact(q, f, x, h);
                s.exact_value = value;
                s.value = value.to_double();
                if (prev_exact) {
                    Rational gap = (value - *prev_exact).abs();
                    s.gap = gap.to_double();
                    gap_small.push_back(gap < tol_exact);
                }
                prev_exact = std::move(value);
            } else {
                s.value = evaluate_quotient_float(q, f, x, h);
                if (prev_value) {
                    double gap = std::fabs(s.value - *prev_value);
                    s.gap = gap;
                    gap_small.push_back(gap < params.tol);
                }
                prev_value = s.value;
            }
            s.ok = true;
        } catch (const Error& e) {
            all_ok = false;
            s.error = e.what();
            prev_exact.reset();
            prev_value.reset();
        }
        report.samples.push_back(std::move(s));
    }

    const Sample& last = report.samples.back();
    report.limit = last.ok ? last.value : 0.0;
    if (last.ok && last.exact_value) report.exact_limit = last.exact_value;
    report.cluster_values = cluster_quotients(report.samples, params.tol);

    if (!all_ok) {
        report.verdict = Verdict::incomplete;
    } else {
        const size_t want = std::min<size_t>(3, gap_small.size());
        bool ok = want > 0;
        for (size_t i = 0; i < want; ++i)
            ok = ok && gap_small[gap_small.size() - 1 - i];
        report.verdict = ok ? Verdict::converged : Verdict::not_converged;
    }
    return report;
}

ShiftFamilyReport shift_family_report(int n, const TestFunction& f, const Rational& x,
                                      const SweepParams& params) {
    ShiftFamilyReport out;
    out.order = n;
    auto family = shift_family(n); // throws for n < 2
    for (int j = 0; j < static_cast<int>(family.size()); ++j) {
        std::string id = "D[" + std::to_string(n) + "," + std::to_string(j) + "]";
        out.reports.push_back(
            estimate_limit(QuotientForm::of(family[static_cast<size_t>(j)], std::move(id)), f,
                           x, params));
    }

    bool agree = true;
    for (const auto& r : out.reports) agree = agree && r.verdict == Verdict::converged;
    for (size_t a = 0; agree && a < out.reports.size(); ++a) {
        for (size_t b = a + 1; agree && b < out.reports.size(); ++b) {
            if (out.reports[a].exact_limit && out.reports[b].exact_limit) {
                Rational gap = (*out.reports[a].exact_limit - *out.reports[b].exact_limit).abs();
                agree = gap < Rational::from_double(params.tol);
            } else {
                agree = std::fabs(out.reports[a].limit - out.reports[b].limit) < params.tol;
            }
        }
    }
    out.agreement = agree;
    return out;
}

std::vector<PeanoEntry> peano_profile(const TestFunction& f, const Rational& x, int n,
                                      ProfileMethod method, const SweepParams& params) {
    if (n < 1) fail(Errc::invalid_order, "profile needs order >= 1");
    std::vector<PeanoEntry> profile;
    profile.reserve(static_cast<size_t>(n));
    for (int k = 1; k <= n; ++k) {
        PeanoEntry entry;
        entry.order = k;
        if (method == ProfileMethod::mz) {
            auto mz = mz_difference(k);
            auto report = estimate_limit(
                QuotientForm::of(mz.stencil, "mz(" + std::to_string(k) + ")"), f, x, params);
            entry.converged = report.verdict == Verdict::converged;
            entry.value = report.limit;
            entry.exact_value = report.exact_limit;
            entry.reports.push_back(std::move(report));
        } else if (k == 1) {
            auto report =
                estimate_limit(QuotientForm::of(forward_riemann(1), "D[1,0]"), f, x, params);
            entry.converged = report.verdict == Verdict::converged;
            entry.value = report.limit;
            entry.exact_value = report.exact_limit;
            entry.reports.push_back(std::move(report));
        } else {
            auto family = shift_family_report(k, f, x, params);
            entry.converged = family.agreement;
            entry.value = family.reports.front().limit;
            entry.exact_value = family.reports.front().exact_limit;
            entry.reports = std::move(family.reports);
        }
        profile.push_back(std::move(entry));
    }
    return profile;
}

ConditioningReport conditioning_report(const Stencil& s, std::string id) {
    ConditioningReport r;
    r.stencil_id = std::move(id);
    for (const auto& c : s.coefficients()) {
        r.abs_sum += c.abs();
        if (c.abs() > r.max_abs) r.max_abs = c.abs();
    }
    r.abs_sum_float = r.abs_sum.to_double();
    r.span = s.nodes().back() - s.nodes().front();
    r.node_count = static_cast<int>(s.nodes().size());
    return r;
}

ComparisonTable compare_methods(int order) {
    if (order < 2) fail(Errc::invalid_order, "comparison needs order >= 2");
    ComparisonTable t;
    t.order = order;

    auto mz = mz_difference(order);
    auto mz_cond = conditioning_report(mz.stencil);
    t.mz.limits = 1;
    t.mz.stencil_nodes = order + 1;
    t.mz.distinct_points = order + 1;
    t.mz.min_point = mz.stencil.nodes().front();
    t.mz.max_point = mz.stencil.nodes().back();
    t.mz.span = mz_cond.span;
    t.mz.abs_sum = mz_cond.abs_sum;

    auto fwd_cond = conditioning_report(forward_riemann(order));
    t.shifts.limits = order - 1;
    t.shifts.stencil_nodes = order + 1;
    t.shifts.distinct_points = 2 * order - 1; // the union 0 .. 2n-2
    t.shifts.min_point = Rational(0);
    t.shifts.max_point = Rational(2 * order - 2);
    t.shifts.span = Rational(2 * order - 2);
    t.shifts.abs_sum = fwd_cond.abs_sum; // every translate has the same weights
    return t;
}

std::string ConditioningReport::to_json_text() const {
    nlohmann::ordered_json j;
    j["stencil"] = stencil_id;
    j["node_count"] = node_count;
    j["span"] = span.str();
    j["max_abs"] = max_abs.str();
    j["abs_sum"] = abs_sum.str();
    j["abs_sum_float"] = abs_sum_float;
    return j.dump(2) + "\n";
}

std::string ConditioningReport::to_csv() const {
    std::string out = "stencil,node_count,span,max_abs,abs_sum,abs_sum_float\n";
    out += stencil_id + "," + std::to_string(node_count) + "," + span.str() + "," +
           max_abs.str() + "," + abs_sum.str() + "," + fmt_double(abs_sum_float) + "\n";
    return out;
}

std::string EstimateReport::to_json_text() const {
    nlohmann::ordered_json j;
    j["stencil"] = stencil_id;
    j["function"] = function_name;
    j["x"] = x.str();
    j["order"] = order;
    j["mode"] = params.mode == EvalMode::exact ? "exact" : "float";
    j["h0"] = params.h0.str();
    j["ratio"] = params.ratio.str();
    j["count"] = params.count;
    j["tol"] = params.tol;
    auto& js = j["samples"] = nlohmann::ordered_json::array();
    for (const auto& s : samples) {
        nlohmann::ordered_json row;
        row["h"] = s.h.str();
        row["ok"] = s.ok;
        if (s.ok) {
            row["quotient"] = s.value;
            if (s.exact_value) row["quotient_exact"] = s.exact_value->str();
            if (s.gap) row["gap"] = *s.gap;
        } else {
            row["error"] = s.error;
        }
        js.push_back(std::move(row));
    }
    j["verdict"] = verdict_name(verdict);
    j["limit"] = limit;
    if (exact_limit) j["limit_exact"] = exact_limit->str();
    j["clusters"] = cluster_values;
    return j.dump(2) + "\n";
}

std::string EstimateReport::to_csv() const {
    std::string out = "h,quotient,gap\n";
    for (const auto& s : samples) {
        out += fmt_double(s.h.to_double());
        out += ',';
        if (s.ok) out += fmt_double(s.value);
        out += ',';
        if (s.ok && s.gap) out += fmt_double(*s.gap);
        out += '\n';
    }
    return out;
}

} // namespace grdlab
