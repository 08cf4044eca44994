#pragma once

#include <optional>
#include <string>
#include <vector>

#include "grdlab/rational.hpp"

namespace grdlab {

// A strictly increasing set of nonnegative integers; the node sets of the
// good-set calculus. Size is order + 1 throughout a derivation.
class NodeSet {
public:
    NodeSet() = default;

    // Sorts; rejects duplicates and negative entries.
    static NodeSet of(std::vector<BigInt> elems);

    // {lo, lo+1, ..., hi}
    static NodeSet range(long long lo, long long hi);

    const std::vector<BigInt>& elems() const { return elems_; }
    size_t size() const { return elems_.size(); }
    bool empty() const { return elems_.empty(); }
    const BigInt& max() const { return elems_.back(); }
    bool contains(const BigInt& v) const;

    NodeSet doubled() const;
    static size_t intersection_size(const NodeSet& a, const NodeSet& b);
    static NodeSet union_minus(const NodeSet& a, const NodeSet& b, const BigInt& removed);

    bool operator==(const NodeSet& o) const = default;

    std::string str() const; // "{0, 1, 2, 4}"

private:
    std::vector<BigInt> elems_;
};

// 0 and powers of two are not intruders; everything else is.
bool is_intruder(const BigInt& v);
std::optional<BigInt> largest_intruder(const NodeSet& s);
int intruder_count(const NodeSet& s);

// One primitive move of a derivation. Sources index earlier steps.
struct Step {
    enum class Kind { input, dilate, eliminate };

    static Step input(int j);
    static Step dilate(int src);
    static Step eliminate(int src1, int src2, BigInt removed);

    Kind kind = Kind::input;
    int j = -1;          // input: yields {j, j+1, ..., order+j}, 0 <= j <= order-2
    int src1 = -1;       // dilate: source; eliminate: first source
    int src2 = -1;       // eliminate: second source
    BigInt removed;      // eliminate: the shared element dropped from the union
};

// A checkable certificate: an ordered list of steps, each producing a node
// set, together with the claimed final set.
struct Derivation {
    int order = 0;
    std::vector<Step> steps;
    std::vector<NodeSet> produced; // filled by the generator; verifiers recompute
    NodeSet final_set;
};

struct RejectInfo {
    int step_index = -1; // -1 when the problem is not tied to a step
    std::string rule;
    std::string message;
};

struct VerifyResult {
    bool ok = false;
    std::optional<RejectInfo> reject;
    std::vector<NodeSet> produced;
};

// Checks every step against the calculus rules:
//   input     0 <= j <= order-2, order >= 2
//   dilate    source is an earlier step
//   eliminate sources are earlier steps sharing exactly `order` elements,
//             with the removed element in the intersection
// and that the final produced set equals the claim. Never throws on
// malformed content; the first offending step is reported.
VerifyResult verify_derivation(const Derivation& d);

// Certificate file format:
//   {"n": int,
//    "steps": [{"op":"input","j":int} | {"op":"dilate","src":int}
//              | {"op":"eliminate","src1":int,"src2":int,"removed":int}],
//    "final": [int, ...]}
// Writing is deterministic (same derivation, same bytes).
std::string write_certificate(const Derivation& d);
Derivation read_certificate(const std::string& text); // throws Error(parse_error)

} // namespace grdlab
