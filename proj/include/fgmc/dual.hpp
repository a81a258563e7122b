#pragma once

#include <complex>
#include <optional>

#include <json.hpp>

#include "fgmc/grid.hpp"

namespace fgmc {

// Two-variable Fourier transform of a pairwise kernel over {0,1}^2:
//   nu(wk, wl) = sum_{xk,xl} kernel(xk, xl) * (-1)^(wk xk + wl xl).
// Sums of axis-aligned values are combined exactly whenever they stay on an
// axis, so kernels like pm(a) transform with exact zeros.
PairwiseKernel hadamard2(const PairwiseKernel& kernel);

// Dual of the grid: identical topology, every pairwise factor replaced by its
// transform, and the equality node at each site replaced by an XOR node over
// that site's incident half-edge variables.
struct DualGridModel {
    int rows = 0, cols = 0;
    PairwiseKernel nu;

    int num_edges() const { return rows * (cols - 1) + cols * (rows - 1); }
    int num_legs() const { return 2 * num_edges(); }  // one variable per factor side
    int node_degree(int r, int c) const {
        return (r > 0) + (r + 1 < rows) + (c > 0) + (c + 1 < cols);
    }
};

DualGridModel dualize(const GridModel& model);

struct DualOptions {
    int max_vars = 24;       // primal-size cap, matching brute force
    int max_free_dims = 24;  // enumeration cap on the XOR solution space
    bool force_general = false;  // skip the structural shortcut (cross-validation)
};

struct DualPartitionResult {
    ComplexValue z_d;
    double abs_sum = 0.0;  // sum of |product| over satisfying patterns
};

// Partition function of the dual graph: sum over half-edge assignments
// satisfying every XOR node of the product of nu factors. Kernels whose
// transform has a single surviving entry short-circuit structurally (the only
// candidate pattern either satisfies all parity checks or not); otherwise the
// XOR system is Gauss-eliminated over GF(2) and the solution space enumerated.
DualPartitionResult dual_partition_detailed(const DualGridModel& dual,
                                            const DualOptions& opts = {});
ComplexValue dual_partition(const DualGridModel& dual, const DualOptions& opts = {});

struct DualityReport {
    std::complex<double> z_f{0.0, 0.0};
    std::complex<double> z_d{0.0, 0.0};
    std::optional<std::complex<double>> ratio;  // z_d / z_f when z_f != 0
    bool primal_zero = false, dual_zero = false;
    bool zero_equivalence = false;
};

// Computes both sides independently (primal brute force, dual enumeration)
// and checks that one vanishes exactly when the other does (1e-9 relative on
// the nonzero side). The ratio is a fixed constant of the topology; tests
// verify its constancy across kernels.
DualityReport duality_check(const GridModel& model, const DualOptions& opts = {});

nlohmann::json to_json(const DualityReport& r);

}  // namespace fgmc
