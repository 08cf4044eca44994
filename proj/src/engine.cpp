#include "grdlab/engine.hpp"

#include <algorithm>
#include <utility>

#include "grdlab/vandermonde.hpp"

namespace grdlab {

std::vector<NodeSet> initial_sets(int n) {
    if (n < 2) fail(Errc::invalid_order, "need order >= 2");
    std::vector<NodeSet> sets;
    sets.reserve(static_cast<size_t>(n) - 1);
    for (int j = 0; j <= n - 2; ++j) sets.push_back(NodeSet::range(j, j + n));
    return sets;
}

NodeSet step2_row(int n, int k) {
    if (n < 2) fail(Errc::invalid_order, "need order >= 2");
    if (k < 1 || k > n / 2)
        fail(Errc::row_out_of_range, "row " + std::to_string(k) + " outside 1.." +
                                         std::to_string(n / 2) + " for order " +
                                         std::to_string(n));
    std::vector<BigInt> elems;
    for (int v = 0; v <= 2 * k; ++v) elems.emplace_back(v);
    for (int v = k + 1; v <= n - k; ++v) elems.emplace_back(2 * v);
    return NodeSet::of(std::move(elems));
}

NodeSet geometric_set(int n) {
    std::vector<BigInt> elems{0, 1, 2};
    for (int k = 2; k < n; ++k) elems.push_back(BigInt(1) << k);
    return NodeSet::of(std::move(elems));
}

namespace {

// Emits steps while tracking their produced sets; rows of the evolving array
// are step indices, kept top-down as in the displayed charts.
class Builder {
public:
    explicit Builder(int n) : n_(n) {}

    int input(int j) {
        deriv_.steps.push_back(Step::input(j));
        deriv_.produced.push_back(NodeSet::range(j, j + n_));
        return last_index();
    }

    int dilate(int src) {
        deriv_.steps.push_back(Step::dilate(src));
        deriv_.produced.push_back(set(src).doubled());
        return last_index();
    }

    int eliminate(int a, int b, const BigInt& removed) {
        if (a > b) std::swap(a, b);
        const NodeSet& sa = set(a);
        const NodeSet& sb = set(b);
        if (NodeSet::intersection_size(sa, sb) != static_cast<size_t>(n_) ||
            !sa.contains(removed) || !sb.contains(removed))
            fail(Errc::internal, "illegal elimination while deriving: " + sa.str() + " vs " +
                                     sb.str() + " removing " + removed.str());
        deriv_.steps.push_back(Step::eliminate(a, b, removed));
        deriv_.produced.push_back(NodeSet::union_minus(sa, sb, removed));
        return last_index();
    }

    const NodeSet& set(int idx) const { return deriv_.produced[static_cast<size_t>(idx)]; }
    int last_index() const { return static_cast<int>(deriv_.steps.size()) - 1; }

    Derivation take(NodeSet final_set) {
        deriv_.order = n_;
        deriv_.final_set = std::move(final_set);
        return std::move(deriv_);
    }

private:
    int n_;
    Derivation deriv_;
};

std::vector<NodeSet> sets_of(const Builder& b, const std::vector<int>& rows) {
    std::vector<NodeSet> out;
    out.reserve(rows.size());
    for (int r : rows) out.push_back(b.set(r));
    return out;
}

} // namespace

DeriveResult derive_geometric(int n) {
    if (n < 2) fail(Errc::invalid_order, "need order >= 2");

    Builder b(n);
    DeriveResult result;
    auto emit_array = [&](std::string label, std::vector<NodeSet> rows) {
        result.arrays.push_back(TraceArray{std::move(label), std::move(rows)});
    };

    // Step 1: the input windows, one per row.
    std::vector<int> inputs;
    for (int j = 0; j <= n - 2; ++j) inputs.push_back(b.input(j));
    emit_array("input", sets_of(b, inputs));

    const int nu = n / 2;
    std::vector<int> rows; // step index per row, top-down

    if (n == 2) {
        rows = {inputs[0]};
    } else {
        // Step 2. Rows are processed top-down: row k's j-th elimination leans
        // on input row i-1 for j = 1 and afterwards on the successive stages
        // of the already-finished row k+1, which is what makes each move legal
        // (the sources share exactly n elements at every stage).
        std::vector<std::vector<int>> chain(static_cast<size_t>(nu) + 1);
        for (int k = nu; k >= 1; --k) {
            const int i = n - 2 * k;
            int cur = inputs[static_cast<size_t>(i)];
            chain[static_cast<size_t>(k)].push_back(cur);
            for (int j = 1; j <= i; ++j) {
                int partner = (j == 1) ? inputs[static_cast<size_t>(i - 1)]
                                       : chain[static_cast<size_t>(k + 1)][static_cast<size_t>(j - 2)];
                BigInt odd_entry = n + i - (2 * j - 1);
                cur = b.eliminate(cur, partner, odd_entry);
                chain[static_cast<size_t>(k)].push_back(cur);
            }
        }
        for (int k = nu; k >= 1; --k) rows.push_back(chain[static_cast<size_t>(k)].back());
        if (rows.size() > 1) emit_array("step 2", sets_of(b, rows));

        // Step 3: the unique power of two among the last entries 2(n-k) sits
        // in row l = n - 2^(eta-1); rows above it carry one extra intruder and
        // cut it against the row below, bottom-up from the marked row.
        BigInt marked = 1;
        while (marked * 2 <= 2 * (n - 1)) marked *= 2;
        int ell = n - (marked / 2).convert_to<int>();
        if (ell < nu) {
            for (int k = ell + 1; k <= nu; ++k) {
                size_t row_pos = static_cast<size_t>(nu - k);      // top-down index of row k
                size_t below = static_cast<size_t>(nu - (k - 1));  // row k-1, already final
                BigInt victim = b.set(rows[row_pos]).max();
                rows[row_pos] = b.eliminate(rows[row_pos], rows[below], victim);
            }
            if (rows.size() > 1) emit_array("step 3", sets_of(b, rows));
        }
    }

    // Step 4: repeat cutting the largest intruder per row, bottom-up against
    // the freshly cut row below; the bottom row cuts against twice the top
    // row. An odd largest intruder in the top row drops that row instead.
    int pass = 0;
    while (!(rows.size() == 1 && intruder_count(b.set(rows[0])) == 0)) {
        ++pass;
        if (pass > 4 * n) fail(Errc::internal, "runaway elimination loop");

        auto top_intruder = largest_intruder(b.set(rows[0]));
        if (!top_intruder) fail(Errc::internal, "top row lost its intruders early");
        const bool drop_top = ((*top_intruder) & 1) == 1;

        int base = b.dilate(rows[0]);
        if (drop_top && rows.size() == 2) {
            // the closing chart: the surviving row above its elimination base
            emit_array("step 4 pass " + std::to_string(pass) + " (base)",
                       {b.set(rows[1]), b.set(base)});
        }

        int prev = base;
        size_t stop = drop_top ? 1 : 0;
        for (size_t r = rows.size(); r-- > stop;) {
            auto victim = largest_intruder(b.set(rows[r]));
            if (!victim) fail(Errc::internal, "row without intruders inside a pass");
            prev = rows[r] = b.eliminate(rows[r], prev, *victim);
        }
        if (drop_top) rows.erase(rows.begin());
        if (rows.size() > 1) emit_array("step 4 pass " + std::to_string(pass), sets_of(b, rows));
    }

    NodeSet final_set = b.set(rows[0]);
    if (!(final_set == geometric_set(n)))
        fail(Errc::internal, "derivation ended in " + final_set.str());

    result.derivation = b.take(std::move(final_set));
    auto check = verify_derivation(result.derivation);
    if (!check.ok)
        fail(Errc::internal, "generated derivation failed verification at step " +
                                 std::to_string(check.reject->step_index) + " (" +
                                 check.reject->rule + ")");
    return result;
}

IntruderProfile intruder_profile(const std::vector<NodeSet>& rows, int /*n*/) {
    IntruderProfile profile;
    profile.row_count = static_cast<int>(rows.size());
    profile.rows.reserve(rows.size());
    for (const NodeSet& row : rows) {
        RowProfile p;
        for (const BigInt& v : row.elems()) {
            if (is_intruder(v)) {
                if ((v & 1) == 1) ++p.alpha;
                else ++p.beta;
            } else if (v > 1) {
                ++p.eta; // a power of two above 1
            }
        }
        p.gamma = p.alpha + p.beta;
        profile.rows.push_back(p);
    }
    return profile;
}

std::vector<Stencil> replay_derivation(const Derivation& d) {
    auto verdict = verify_derivation(d);
    if (!verdict.ok)
        fail(Errc::replay_mismatch,
             "derivation does not verify: " + verdict.reject->rule + " at step " +
                 std::to_string(verdict.reject->step_index));

    const Stencil base = forward_riemann(d.order);
    std::vector<Stencil> replayed;
    replayed.reserve(d.steps.size());

    for (size_t idx = 0; idx < d.steps.size(); ++idx) {
        const Step& st = d.steps[idx];
        switch (st.kind) {
        case Step::Kind::input:
            replayed.push_back(shift(base, Rational(st.j)));
            break;
        case Step::Kind::dilate:
            replayed.push_back(dilate(replayed[static_cast<size_t>(st.src1)], Rational(2)));
            break;
        case Step::Kind::eliminate:
            replayed.push_back(eliminate(replayed[static_cast<size_t>(st.src1)],
                                         replayed[static_cast<size_t>(st.src2)],
                                         Rational(st.removed)));
            break;
        }

        // The replayed stencil must be the unique solution on this step's
        // node set: same nodes, zero residual.
        const Stencil& s = replayed.back();
        const NodeSet& expect = verdict.produced[idx];
        bool same_nodes = s.nodes().size() == expect.size();
        for (size_t i = 0; same_nodes && i < expect.size(); ++i)
            same_nodes = s.nodes()[i] == Rational(expect.elems()[i]);
        if (!same_nodes || !residual_is_zero(s.coefficients(), s.nodes(), d.order))
            fail(Errc::replay_mismatch, "step " + std::to_string(idx) +
                                            " does not match the solution on " + expect.str());
    }
    return replayed;
}

} // namespace grdlab
