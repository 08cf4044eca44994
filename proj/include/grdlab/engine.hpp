#pragma once

#include <string>
#include <vector>

#include "grdlab/derivation.hpp"
#include "grdlab/stencil.hpp"

namespace grdlab {

// The n-1 consecutive integer windows {j, j+1, ..., n+j}, j = 0..n-2.
std::vector<NodeSet> initial_sets(int n);

// Closed form of the k-th row from the bottom after the odd-entry sweep:
// {0, 1, ..., 2k} | {2(k+1), 2(k+2), ..., 2(n-k)}, valid for 1 <= k <= n/2.
NodeSet step2_row(int n, int k);

// One displayed array of the run: rows top to bottom, as in the worked charts.
struct TraceArray {
    std::string label;
    std::vector<NodeSet> rows;
};

struct DeriveResult {
    Derivation derivation;
    std::vector<TraceArray> arrays;
};

// Produces a verified derivation of {0, 1, 2, 4, ..., 2^(n-1)} from the
// initial windows, expanding every compound move into primitive
// input/dilate/eliminate steps. Deterministic: same n, same result.
//
// Stages, mirroring the worked charts:
//   1. input the n-1 windows;
//   2. on each row ending in an even entry, eliminate its largest odd
//      entries (high to low) against the row above, processed top-down so
//      the later eliminations can lean on the finished row above;
//      rows ending in an odd entry are dropped;
//   3. cut the largest intruder of every row above the unique row whose last
//      entry is a power of two;
//   4. repeat: cut the largest intruder of every row bottom-up, the bottom
//      row cutting against twice the top row; when the top row's largest
//      intruder is odd the top row is dropped instead of processed.
DeriveResult derive_geometric(int n);

// Per-row intruder statistics. eta counts the powers of two above 1 present
// in the row; gamma = alpha + beta.
struct RowProfile {
    int alpha = 0; // odd intruders
    int beta = 0;  // even intruders
    int gamma = 0;
    int eta = 0;
};

struct IntruderProfile {
    std::vector<RowProfile> rows;
    int row_count = 0;
};

IntruderProfile intruder_profile(const std::vector<NodeSet>& rows, int n);

// Replays a certificate as stencil algebra: input j -> shift of the forward
// difference, dilate -> dilation by 2, eliminate -> stencil elimination.
// After every step the replayed stencil must sit on the step's node set and
// satisfy the Vandermonde conditions there, which pins it (by uniqueness) to
// that node set's solution; any disagreement raises Error(replay_mismatch).
// The derivation is verified first.
std::vector<Stencil> replay_derivation(const Derivation& d);

// Geometric node set {0, 1, 2, 4, ..., 2^(n-1)} (for n = 2: {0, 1, 2}).
NodeSet geometric_set(int n);

} // namespace grdlab
