#pragma once

#include "fgmc/grid.hpp"
#include "fgmc/summary.hpp"

namespace fgmc {

struct BruteForceOptions {
    int max_vars = 24;  // 2^N enumeration cap
    int threads = 0;    // 0 = hardware concurrency
};

// Enumerates all 2^N assignments. Counts are exact; magnitude sums use
// compensated accumulation. The chunked reduction is fixed-shape, so results
// are bit-identical for any thread count.
PartitionSummary brute_force_summary(const GridModel& model,
                                     const BruteForceOptions& opts = {});

}  // namespace fgmc
