#include "grdlab/derivation.hpp"

#include <algorithm>
#include <limits>

#include <json.hpp>

namespace grdlab {

NodeSet NodeSet::of(std::vector<BigInt> elems) {
    std::sort(elems.begin(), elems.end());
    for (size_t i = 0; i < elems.size(); ++i) {
        if (elems[i] < 0) fail(Errc::parse_error, "negative node " + elems[i].str());
        if (i > 0 && elems[i] == elems[i - 1])
            fail(Errc::parse_error, "duplicate node " + elems[i].str());
    }
    NodeSet s;
    s.elems_ = std::move(elems);
    return s;
}

NodeSet NodeSet::range(long long lo, long long hi) {
    NodeSet s;
    for (long long v = lo; v <= hi; ++v) s.elems_.emplace_back(v);
    return s;
}

bool NodeSet::contains(const BigInt& v) const {
    return std::binary_search(elems_.begin(), elems_.end(), v);
}

NodeSet NodeSet::doubled() const {
    NodeSet s;
    s.elems_.reserve(elems_.size());
    for (const auto& v : elems_) s.elems_.push_back(v * 2);
    return s;
}

size_t NodeSet::intersection_size(const NodeSet& a, const NodeSet& b) {
    size_t i = 0, j = 0, count = 0;
    while (i < a.elems_.size() && j < b.elems_.size()) {
        if (a.elems_[i] < b.elems_[j]) ++i;
        else if (b.elems_[j] < a.elems_[i]) ++j;
        else { ++count; ++i; ++j; }
    }
    return count;
}

NodeSet NodeSet::union_minus(const NodeSet& a, const NodeSet& b, const BigInt& removed) {
    NodeSet s;
    std::set_union(a.elems_.begin(), a.elems_.end(), b.elems_.begin(), b.elems_.end(),
                   std::back_inserter(s.elems_));
    auto it = std::lower_bound(s.elems_.begin(), s.elems_.end(), removed);
    if (it != s.elems_.end() && *it == removed) s.elems_.erase(it);
    return s;
}

std::string NodeSet::str() const {
    std::string out = "{";
    for (size_t i = 0; i < elems_.size(); ++i) {
        if (i) out += ", ";
        out += elems_[i].str();
    }
    out += "}";
    return out;
}

bool is_intruder(const BigInt& v) {
    return v != 0 && !is_power_of_two(v);
}

std::optional<BigInt> largest_intruder(const NodeSet& s) {
    const auto& e = s.elems();
    for (size_t i = e.size(); i-- > 0;)
        if (is_intruder(e[i])) return e[i];
    return std::nullopt;
}

int intruder_count(const NodeSet& s) {
    int count = 0;
    for (const auto& v : s.elems())
        if (is_intruder(v)) ++count;
    return count;
}

Step Step::input(int j) {
    Step s;
    s.kind = Kind::input;
    s.j = j;
    return s;
}

Step Step::dilate(int src) {
    Step s;
    s.kind = Kind::dilate;
    s.src1 = src;
    return s;
}

Step Step::eliminate(int src1, int src2, BigInt removed) {
    Step s;
    s.kind = Kind::eliminate;
    s.src1 = src1;
    s.src2 = src2;
    s.removed = std::move(removed);
    return s;
}

VerifyResult verify_derivation(const Derivation& d) {
    VerifyResult out;
    auto reject = [&](int step, std::string rule, std::string message) {
        out.ok = false;
        out.reject = RejectInfo{step, std::move(rule), std::move(message)};
        return out;
    };

    if (d.order < 2) return reject(-1, "InvalidOrder", "order must be >= 2");
    if (d.steps.empty()) return reject(-1, "EmptyDerivation", "no steps");

    out.produced.reserve(d.steps.size());
    for (size_t idx = 0; idx < d.steps.size(); ++idx) {
        const Step& st = d.steps[idx];
        const int i = static_cast<int>(idx);
        auto backref = [&](int src) { return src >= 0 && src < i; };
        switch (st.kind) {
        case Step::Kind::input: {
            if (st.j < 0 || st.j > d.order - 2)
                return reject(i, "InputOutOfRange",
                              "input index " + std::to_string(st.j) + " outside 0.." +
                                  std::to_string(d.order - 2));
            out.produced.push_back(NodeSet::range(st.j, st.j + d.order));
            break;
        }
        case Step::Kind::dilate: {
            if (!backref(st.src1))
                return reject(i, "SourceOutOfRange",
                              "dilate source " + std::to_string(st.src1) +
                                  " is not an earlier step");
            out.produced.push_back(out.produced[static_cast<size_t>(st.src1)].doubled());
            break;
        }
        case Step::Kind::eliminate: {
            if (!backref(st.src1) || !backref(st.src2))
                return reject(i, "SourceOutOfRange", "eliminate sources must be earlier steps");
            const NodeSet& a = out.produced[static_cast<size_t>(st.src1)];
            const NodeSet& b = out.produced[static_cast<size_t>(st.src2)];
            size_t common = NodeSet::intersection_size(a, b);
            if (common != static_cast<size_t>(d.order))
                return reject(i, "IntersectionNotN",
                              "sources share " + std::to_string(common) +
                                  " elements, need exactly " + std::to_string(d.order));
            if (!a.contains(st.removed) || !b.contains(st.removed))
                return reject(i, "NodeNotShared",
                              "removed element " + st.removed.str() +
                                  " is not in the intersection");
            out.produced.push_back(NodeSet::union_minus(a, b, st.removed));
            break;
        }
        }
    }

    if (!(out.produced.back() == d.final_set))
        return reject(static_cast<int>(d.steps.size()) - 1, "FinalMismatch",
                      "last step produced " + out.produced.back().str() + ", claim is " +
                          d.final_set.str());
    out.ok = true;
    return out;
}

namespace {

long long to_serializable(const BigInt& v) {
    if (v < 0 || v > BigInt(std::numeric_limits<long long>::max()))
        fail(Errc::parse_error, "value " + v.str() + " outside the certificate integer range");
    return v.convert_to<long long>();
}

} // namespace

std::string write_certificate(const Derivation& d) {
    nlohmann::ordered_json j;
    j["n"] = d.order;
    auto& steps = j["steps"] = nlohmann::ordered_json::array();
    for (const Step& st : d.steps) {
        nlohmann::ordered_json s;
        switch (st.kind) {
        case Step::Kind::input:
            s["op"] = "input";
            s["j"] = st.j;
            break;
        case Step::Kind::dilate:
            s["op"] = "dilate";
            s["src"] = st.src1;
            break;
        case Step::Kind::eliminate:
            s["op"] = "eliminate";
            s["src1"] = st.src1;
            s["src2"] = st.src2;
            s["removed"] = to_serializable(st.removed);
            break;
        }
        steps.push_back(std::move(s));
    }
    auto& fin = j["final"] = nlohmann::ordered_json::array();
    for (const auto& v : d.final_set.elems()) fin.push_back(to_serializable(v));
    return j.dump(2) + "\n";
}

Derivation read_certificate(const std::string& text) {
    auto j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object())
        fail(Errc::parse_error, "certificate is not a JSON object");
    if (!j.contains("n") || !j["n"].is_number_integer())
        fail(Errc::parse_error, "certificate field \"n\" missing or not an integer");
    if (!j.contains("steps") || !j["steps"].is_array())
        fail(Errc::parse_error, "certificate field \"steps\" missing or not an array");
    if (!j.contains("final") || !j["final"].is_array())
        fail(Errc::parse_error, "certificate field \"final\" missing or not an array");

    auto require_int = [](const nlohmann::json& obj, const char* key, long long lo,
                          long long hi) -> long long {
        if (!obj.contains(key) || !obj[key].is_number_integer() ||
            (obj[key].is_number_unsigned() &&
             obj[key].get<unsigned long long>() >
                 static_cast<unsigned long long>(std::numeric_limits<long long>::max())))
            fail(Errc::parse_error,
                 std::string("field \"") + key + "\" missing or not an integer");
        long long v = obj[key].get<long long>();
        if (v < lo || v > hi)
            fail(Errc::parse_error, std::string("field \"") + key + "\" out of range");
        return v;
    };

    // Representational and resource bounds only; rule violations (bad j,
    // sources, order) are the verifier's to reject, with exit code 1.
    const long long idx_lo = -(1LL << 20), idx_hi = (1LL << 20);
    Derivation d;
    d.order = static_cast<int>(require_int(j, "n", idx_lo, 4096));
    if (j["steps"].size() > (1u << 20))
        fail(Errc::parse_error, "certificate has too many steps");

    for (const auto& s : j["steps"]) {
        if (!s.is_object() || !s.contains("op") || !s["op"].is_string())
            fail(Errc::parse_error, "step without an \"op\" string");
        const std::string op = s["op"].get<std::string>();
        if (op == "input") {
            d.steps.push_back(Step::input(static_cast<int>(require_int(s, "j", idx_lo, idx_hi))));
        } else if (op == "dilate") {
            d.steps.push_back(
                Step::dilate(static_cast<int>(require_int(s, "src", idx_lo, idx_hi))));
        } else if (op == "eliminate") {
            d.steps.push_back(
                Step::eliminate(static_cast<int>(require_int(s, "src1", idx_lo, idx_hi)),
                                static_cast<int>(require_int(s, "src2", idx_lo, idx_hi)),
                                BigInt(require_int(s, "removed",
                                                   std::numeric_limits<long long>::min(),
                                                   std::numeric_limits<long long>::max()))));
        } else {
            fail(Errc::parse_error, "unknown step op \"" + op + "\"");
        }
    }

    std::vector<BigInt> fin;
    for (const auto& v : j["final"]) {
        if (!v.is_number_integer() ||
            (v.is_number_unsigned() &&
             v.get<unsigned long long>() >
                 static_cast<unsigned long long>(std::numeric_limits<long long>::max())))
            fail(Errc::parse_error, "final set entries must be integers");
        fin.emplace_back(v.get<long long>());
    }
    d.final_set = NodeSet::of(std::move(fin));
    return d;
}

} // namespace grdlab
