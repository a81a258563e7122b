#pragma once

#include "fgmc/grid.hpp"
#include "fgmc/summary.hpp"

namespace fgmc {

struct TransferOptions {
    int max_cols = 14;        // 2^cols frontier states
    bool allow_transpose = true;  // run the narrow orientation when it fits
    bool with_counts = true;  // exact per-bin counts (arbitrary precision)
};

// Exact contraction by a raster-scan dynamic program over frontier states
// (the last `cols` assigned variables) with the running product's quarter-turn
// phase carried as part of the state. Binning inside the contraction is exact
// because the phase group is finite: magnitudes multiply in doubles while the
// phase index adds mod 4, so each partial product lands in exactly one bin
// with no floating-point argument involved. A parallel pass with every
// magnitude replaced by 1 (and a fifth absorbing plane for assignments that
// hit a zero entry) yields the exact integer state counts.
//
// Requires an all-quarter-turn kernel; throws UnsupportedKernelError
// otherwise, and ResourceCapError when both orientations exceed max_cols.
PartitionSummary transfer_matrix_summary(const GridModel& model,
                                         const TransferOptions& opts = {});

}  // namespace fgmc
