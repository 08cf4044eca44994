// grdlab: exact generalized Riemann difference stencils, derivation
// certificates and derivative estimation from the command line.

#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "grdlab/engine.hpp"
#include "grdlab/estimate.hpp"
#include "grdlab/functions.hpp"
#include "grdlab/stencil.hpp"
#include "grdlab/vandermonde.hpp"

using namespace grdlab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailedCheck = 1; // verification / convergence failures
constexpr int kExitUsage = 2;       // bad flags, bad inputs, malformed files

std::string fmt_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::vector<Rational> parse_rational_list(const std::string& text) {
    std::vector<Rational> out;
    std::string item;
    std::stringstream ss(text);
    while (std::getline(ss, item, ',')) out.push_back(Rational::parse(item));
    if (out.empty()) fail(Errc::parse_error, "empty node list");
    return out;
}

std::string render_stencil_text(const Stencil& s) {
    std::string out;
    out += "order: " + std::to_string(s.order()) + "\n";
    out += "nodes: " + join_rationals(s.nodes()) + "\n";
    out += "coefficients: " + join_rationals(s.coefficients()) + "\n";
    return out;
}

std::string render_stencil_csv(const Stencil& s) {
    std::string out = "node,coefficient\n";
    for (size_t i = 0; i < s.nodes().size(); ++i)
        out += s.nodes()[i].str() + "," + s.coefficients()[i].str() + "\n";
    return out;
}

// Rows aligned into the columns of the union of their values, intruders
// marked with a trailing '*', as in the worked charts.
std::string render_array(const TraceArray& arr) {
    std::vector<BigInt> columns;
    for (const auto& row : arr.rows)
        for (const auto& v : row.elems()) columns.push_back(v);
    std::sort(columns.begin(), columns.end());
    columns.erase(std::unique(columns.begin(), columns.end()), columns.end());

    auto cell = [](const BigInt& v) { return v.str() + (is_intruder(v) ? "*" : ""); };
    std::vector<size_t> width(columns.size(), 0);
    for (size_t c = 0; c < columns.size(); ++c) width[c] = cell(columns[c]).size();

    std::string out = arr.label + ":\n";
    for (const auto& row : arr.rows) {
        std::string line;
        for (size_t c = 0; c < columns.size(); ++c) {
            std::string text = row.contains(columns[c]) ? cell(columns[c]) : "";
            if (c) line += ' ';
            line += std::string(width[c] - text.size(), ' ') + text;
        }
        while (!line.empty() && line.back() == ' ') line.pop_back();
        out += line + "\n";
    }
    return out;
}

std::string render_primitive_trace(const Derivation& d) {
    std::string out;
    for (size_t i = 0; i < d.steps.size(); ++i) {
        const Step& st = d.steps[i];
        out += "[" + std::to_string(i) + "] ";
        switch (st.kind) {
        case Step::Kind::input:
            out += "input " + std::to_string(st.j);
            break;
        case Step::Kind::dilate:
            out += "dilate [" + std::to_string(st.src1) + "]";
            break;
        case Step::Kind::eliminate:
            out += "eliminate [" + std::to_string(st.src1) + "] [" + std::to_string(st.src2) +
                   "] remove " + st.removed.str();
            break;
        }
        out += " -> " + d.produced[i].str() + "\n";
    }
    return out;
}

nlohmann::ordered_json stencil_json(const Stencil& s) {
    return nlohmann::ordered_json::parse(s.to_json_text());
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Errc::parse_error, "cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct EstimateOptions {
    std::string fn;
    std::string x_text = "0";
    int order = 0;
    std::string method;  // mz | shifts
    std::string stencil; // forward | symmetric | mz | path to a stencil record
    std::string h0 = "1/2";
    std::string ratio = "1/2";
    int count = 40;
    double tol = 1e-6;
    std::string mode = "auto";
};

SweepParams sweep_of(const EstimateOptions& opt, const TestFunction& f, const Rational& x) {
    SweepParams p;
    p.h0 = Rational::parse(opt.h0);
    p.ratio = Rational::parse(opt.ratio);
    p.count = opt.count;
    p.tol = opt.tol;
    if (opt.mode == "auto") {
        // exact when the exact evaluator answers at a handful of generic
        // offsets around x, float otherwise
        bool exact_ok = true;
        for (const Rational& q :
             {Rational(0), Rational(1), Rational(1, 3), Rational(7, 5), Rational(-1)})
            exact_ok = exact_ok && f.exact(x + q * p.h0).has_value();
        p.mode = exact_ok ? EvalMode::exact : EvalMode::floating;
    } else {
        p.mode = opt.mode == "exact" ? EvalMode::exact : EvalMode::floating;
    }
    return p;
}

std::string report_text(const EstimateReport& r) {
    std::string out;
    out += "stencil: " + r.stencil_id + "\n";
    out += "function: " + r.function_name + "\n";
    out += "x: " + r.x.str() + "\n";
    out += "order: " + std::to_string(r.order) + "\n";
    out += "mode: " + std::string(r.params.mode == EvalMode::exact ? "exact" : "float") + "\n";
    out += "h,quotient,gap\n";
    for (const auto& s : r.samples) {
        out += s.h.str() + ",";
        if (s.ok) {
            out += s.exact_value ? s.exact_value->str() : fmt_double(s.value);
            out += ",";
            if (s.gap) out += fmt_double(*s.gap);
        } else {
            out += "error: " + s.error + ",";
        }
        out += "\n";
    }
    out += "verdict: " + std::string(verdict_name(r.verdict)) + "\n";
    out += "limit: " + fmt_double(r.limit) + "\n";
    if (r.exact_limit) out += "limit (exact): " + r.exact_limit->str() + "\n";
    if (r.cluster_values.size() > 1) {
        out += "quotient clusters:";
        for (double v : r.cluster_values) out += " " + fmt_double(v);
        out += "\n";
    }
    return out;
}

int run_stencil(const std::string& nodes_text, int order, const std::string& format) {
    auto nodes = parse_rational_list(nodes_text);
    auto s = Stencil::for_nodes(std::move(nodes), order);
    if (format == "json") std::cout << s.to_json_text();
    else if (format == "csv") std::cout << render_stencil_csv(s);
    else std::cout << render_stencil_text(s);
    return kExitOk;
}

int run_mz(int n, const std::string& format) {
    auto mz = mz_difference(n);
    if (format == "json") {
        nlohmann::ordered_json j;
        j["order"] = n;
        auto& raw = j["raw"];
        raw["nodes"] = nlohmann::ordered_json::array();
        for (const auto& v : mz.raw.nodes) raw["nodes"].push_back(v.str());
        raw["coefficients"] = nlohmann::ordered_json::array();
        for (const auto& v : mz.raw.coefficients) raw["coefficients"].push_back(v.str());
        j["lambda"] = mz.lambda.str();
        j["stencil"] = stencil_json(mz.stencil);
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "order: " << n << "\n";
        std::cout << "raw nodes: " << join_rationals(mz.raw.nodes) << "\n";
        std::cout << "raw coefficients: " << join_rationals(mz.raw.coefficients) << "\n";
        std::cout << "lambda: " << mz.lambda.str() << "\n";
        std::cout << "nodes: " << join_rationals(mz.stencil.nodes()) << "\n";
        std::cout << "coefficients: " << join_rationals(mz.stencil.coefficients()) << "\n";
    }
    return kExitOk;
}

int run_derive(int n, const std::string& out_path, const std::string& trace) {
    if (n > 63) fail(Errc::parse_error, "certificate serialization caps the order at 63");
    auto res = derive_geometric(n);
    std::cout << "n = " << n << "\n";
    if (trace == "primitive") {
        std::cout << render_primitive_trace(res.derivation);
    } else {
        for (const auto& arr : res.arrays) std::cout << render_array(arr) << "\n";
    }
    std::cout << "final: " << res.derivation.final_set.str() << "\n";
    if (!out_path.empty()) {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) fail(Errc::parse_error, "cannot write " + out_path);
        out << write_certificate(res.derivation);
        std::cerr << "certificate written to " << out_path << "\n";
    }
    return kExitOk;
}

int run_verify(const std::string& path, const std::string& format) {
    auto d = read_certificate(read_file(path));
    auto verdict = verify_derivation(d);
    if (format == "json") {
        nlohmann::ordered_json j;
        j["ok"] = verdict.ok;
        if (verdict.ok) {
            j["steps"] = d.steps.size();
            j["final"] = nlohmann::ordered_json::array();
            for (const auto& v : d.final_set.elems()) j["final"].push_back(v.str());
        } else {
            j["step"] = verdict.reject->step_index;
            j["rule"] = verdict.reject->rule;
            j["message"] = verdict.reject->message;
        }
        std::cout << j.dump(2) << "\n";
    } else if (verdict.ok) {
        std::cout << "ok: " << d.steps.size() << " steps, final " << d.final_set.str() << "\n";
    } else {
        std::cout << "rejected at step " << verdict.reject->step_index << ": "
                  << verdict.reject->rule << " - " << verdict.reject->message << "\n";
    }
    return verdict.ok ? kExitOk : kExitFailedCheck;
}

int run_replay(const std::string& path, const std::string& format) {
    auto d = read_certificate(read_file(path));
    std::vector<Stencil> replayed;
    try {
        replayed = replay_derivation(d);
    } catch (const Error& e) {
        if (e.code() != Errc::replay_mismatch) throw;
        if (format == "json") {
            nlohmann::ordered_json j;
            j["ok"] = false;
            j["message"] = e.what();
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "replay failed: " << e.what() << "\n";
        }
        return kExitFailedCheck;
    }
    if (format == "json") {
        nlohmann::ordered_json j;
        j["ok"] = true;
        j["steps"] = replayed.size();
        j["final"] = stencil_json(replayed.back());
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "ok: replayed " << replayed.size() << " steps\n";
        std::cout << render_stencil_text(replayed.back());
    }
    return kExitOk;
}

int run_estimate(const EstimateOptions& opt, const std::string& format) {
    auto f = lookup_function(opt.fn);
    const Rational x = Rational::parse(opt.x_text);
    SweepParams params = sweep_of(opt, f, x);

    if (!opt.method.empty()) {
        auto profile = peano_profile(f, x, opt.order,
                                     opt.method == "mz" ? ProfileMethod::mz
                                                        : ProfileMethod::shifts,
                                     params);
        bool all_ok = true;
        for (const auto& e : profile) all_ok = all_ok && e.converged;
        if (format == "json") {
            nlohmann::ordered_json j;
            j["function"] = f.name;
            j["x"] = x.str();
            j["method"] = opt.method;
            j["entries"] = nlohmann::ordered_json::array();
            for (const auto& e : profile) {
                nlohmann::ordered_json row;
                row["order"] = e.order;
                row["converged"] = e.converged;
                row["value"] = e.value;
                if (e.exact_value) row["value_exact"] = e.exact_value->str();
                row["reports"] = nlohmann::ordered_json::array();
                for (const auto& r : e.reports) {
                    nlohmann::ordered_json sub;
                    sub["stencil"] = r.stencil_id;
                    sub["verdict"] = verdict_name(r.verdict);
                    sub["limit"] = r.limit;
                    if (r.exact_limit) sub["limit_exact"] = r.exact_limit->str();
                    row["reports"].push_back(std::move(sub));
                }
                j["entries"].push_back(std::move(row));
            }
            j["ok"] = all_ok;
            std::cout << j.dump(2) << "\n";
        } else if (format == "csv") {
            std::cout << "order,converged,value\n";
            for (const auto& e : profile)
                std::cout << e.order << "," << (e.converged ? "true" : "false") << ","
                          << fmt_double(e.value) << "\n";
        } else {
            std::cout << "function: " << f.name << "\n";
            std::cout << "x: " << x.str() << "\n";
            std::cout << "method: " << opt.method << "\n";
            for (const auto& e : profile) {
                std::cout << "order " << e.order << ": "
                          << (e.converged ? "converged" : "not-converged") << " "
                          << fmt_double(e.value);
                if (e.exact_value) std::cout << " (exact " << e.exact_value->str() << ")";
                std::cout << "\n";
                if (!e.converged && e.reports.size() > 1) {
                    for (const auto& r : e.reports)
                        std::cout << "  " << r.stencil_id << ": " << verdict_name(r.verdict)
                                  << " " << fmt_double(r.limit) << "\n";
                }
            }
            std::cout << (all_ok ? "ok" : "failed") << "\n";
        }
        return all_ok ? kExitOk : kExitFailedCheck;
    }

    // single-stencil sweep
    std::optional<Stencil> s;
    std::string id = opt.stencil;
    if (opt.stencil == "forward") s = forward_riemann(opt.order);
    else if (opt.stencil == "symmetric") s = symmetric_riemann(opt.order);
    else if (opt.stencil == "mz") s = mz_difference(opt.order).stencil;
    else s = Stencil::from_json_text(read_file(opt.stencil));

    auto report = estimate_limit(QuotientForm::of(*s, id), f, x, params);
    if (format == "json") std::cout << report.to_json_text();
    else if (format == "csv") std::cout << report.to_csv();
    else std::cout << report_text(report);
    return report.verdict == Verdict::converged ? kExitOk : kExitFailedCheck;
}

int run_compare(int order, const std::string& format) {
    auto t = compare_methods(order);
    auto method_json = [](const MethodSummary& m) {
        nlohmann::ordered_json j;
        j["limits"] = m.limits;
        j["stencil_nodes"] = m.stencil_nodes;
        j["distinct_points"] = m.distinct_points;
        j["min_point"] = m.min_point.str();
        j["max_point"] = m.max_point.str();
        j["span"] = m.span.str();
        j["abs_sum"] = m.abs_sum.str();
        return j;
    };
    if (format == "json") {
        nlohmann::ordered_json j;
        j["order"] = t.order;
        j["mz"] = method_json(t.mz);
        j["shifts"] = method_json(t.shifts);
        std::cout << j.dump(2) << "\n";
    } else if (format == "csv") {
        std::cout << "field,mz,shifts\n";
        std::cout << "limits," << t.mz.limits << "," << t.shifts.limits << "\n";
        std::cout << "stencil_nodes," << t.mz.stencil_nodes << "," << t.shifts.stencil_nodes
                  << "\n";
        std::cout << "distinct_points," << t.mz.distinct_points << ","
                  << t.shifts.distinct_points << "\n";
        std::cout << "max_point," << t.mz.max_point.str() << "," << t.shifts.max_point.str()
                  << "\n";
        std::cout << "span," << t.mz.span.str() << "," << t.shifts.span.str() << "\n";
        std::cout << "abs_sum," << t.mz.abs_sum.str() << "," << t.shifts.abs_sum.str() << "\n";
    } else {
        auto line = [](const std::string& label, const std::string& a, const std::string& b) {
            std::string out = label;
            out.resize(22, ' ');
            std::string col = a;
            col.resize(std::max<size_t>(col.size() + 1, 17), ' ');
            return out + col + b + "\n";
        };
        std::cout << "order: " << t.order << "\n";
        std::cout << line("", "mz", "shifts");
        std::cout << line("limits", std::to_string(t.mz.limits), std::to_string(t.shifts.limits));
        std::cout << line("nodes per stencil", std::to_string(t.mz.stencil_nodes),
                          std::to_string(t.shifts.stencil_nodes));
        std::cout << line("distinct points", std::to_string(t.mz.distinct_points),
                          std::to_string(t.shifts.distinct_points));
        std::cout << line("point range", t.mz.min_point.str() + ".." + t.mz.max_point.str(),
                          t.shifts.min_point.str() + ".." + t.shifts.max_point.str());
        std::cout << line("span", t.mz.span.str(), t.shifts.span.str());
        std::cout << line("sum |coefficients|", t.mz.abs_sum.str(), t.shifts.abs_sum.str());
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact generalized Riemann difference stencils and derivation certificates"};
    app.require_subcommand(1);

    // stencil
    std::string nodes_text, format = "text";
    int order = 0;
    auto* cmd_stencil = app.add_subcommand("stencil", "solve the conditions on given nodes");
    cmd_stencil->add_option("--nodes", nodes_text, "comma-separated rational nodes")->required();
    cmd_stencil->add_option("--order", order, "difference order")->required();
    cmd_stencil->add_option("--format", format)->check(CLI::IsMember({"text", "json", "csv"}));

    // mz
    int mz_n = 0;
    std::string mz_format = "text";
    auto* cmd_mz = app.add_subcommand("mz", "doubling recursion, scale and stencil");
    cmd_mz->add_option("n", mz_n, "order")->required();
    cmd_mz->add_option("--format", mz_format)->check(CLI::IsMember({"text", "json"}));

    // derive
    int derive_n = 0;
    std::string out_path, trace = "grouped";
    auto* cmd_derive = app.add_subcommand("derive", "derive the geometric node set");
    cmd_derive->add_option("n", derive_n, "order")->required();
    cmd_derive->add_option("--out", out_path, "write the certificate here");
    cmd_derive->add_option("--trace", trace)->check(CLI::IsMember({"grouped", "primitive"}));

    // verify / replay
    std::string cert_path, verify_format = "text", replay_format = "text";
    auto* cmd_verify = app.add_subcommand("verify", "check a certificate");
    cmd_verify->add_option("certificate", cert_path)->required();
    cmd_verify->add_option("--format", verify_format)->check(CLI::IsMember({"text", "json"}));
    std::string replay_path;
    auto* cmd_replay = app.add_subcommand("replay", "replay a certificate as stencil algebra");
    cmd_replay->add_option("certificate", replay_path)->required();
    cmd_replay->add_option("--format", replay_format)->check(CLI::IsMember({"text", "json"}));

    // estimate
    EstimateOptions est;
    std::string est_format = "text";
    auto* cmd_estimate = app.add_subcommand("estimate", "estimate derivatives over an h-sweep");
    cmd_estimate->add_option("--fn", est.fn, "function spec")->required();
    cmd_estimate->add_option("--x", est.x_text, "evaluation point (rational)");
    cmd_estimate->add_option("--order", est.order, "order / profile depth")->required();
    auto* method_opt = cmd_estimate->add_option("--method", est.method, "profile method")
                           ->check(CLI::IsMember({"mz", "shifts"}));
    auto* stencil_opt =
        cmd_estimate->add_option("--stencil", est.stencil,
                                 "forward | symmetric | mz | path to a stencil record");
    method_opt->excludes(stencil_opt);
    cmd_estimate->add_option("--h0", est.h0, "initial step");
    cmd_estimate->add_option("--ratio", est.ratio, "step ratio in (0,1)");
    cmd_estimate->add_option("--count", est.count, "sweep length");
    cmd_estimate->add_option("--tol", est.tol, "convergence tolerance");
    cmd_estimate->add_option("--mode", est.mode, "auto probes the exact evaluator first")
        ->check(CLI::IsMember({"auto", "exact", "float"}));
    cmd_estimate->add_option("--format", est_format)
        ->check(CLI::IsMember({"text", "json", "csv"}));

    // compare
    int cmp_order = 0;
    std::string cmp_format = "text";
    auto* cmd_compare = app.add_subcommand("compare", "contrast the two stencil families");
    cmd_compare->add_option("--order", cmp_order)->required();
    cmd_compare->add_option("--format", cmp_format)
        ->check(CLI::IsMember({"text", "json", "csv"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (cmd_stencil->parsed()) return run_stencil(nodes_text, order, format);
        if (cmd_mz->parsed()) return run_mz(mz_n, mz_format);
        if (cmd_derive->parsed()) return run_derive(derive_n, out_path, trace);
        if (cmd_verify->parsed()) return run_verify(cert_path, verify_format);
        if (cmd_replay->parsed()) return run_replay(replay_path, replay_format);
        if (cmd_estimate->parsed()) {
            if (est.method.empty() && est.stencil.empty()) {
                std::cerr << "estimate needs --method or --stencil\n";
                return kExitUsage;
            }
            return run_estimate(est, est_format);
        }
        if (cmd_compare->parsed()) return run_compare(cmp_order, cmp_format);
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return e.code() == Errc::replay_mismatch ? kExitFailedCheck : kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
