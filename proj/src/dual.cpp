#include "fgmc/dual.hpp"

#include <bit>
#include <bitset>
#include <vector>

#include "fgmc/brute_force.hpp"
#include "fgmc/errors.hpp"
#include "fgmc/util.hpp"

namespace fgmc {

namespace {

constexpr size_t kMaxLegs = 128;
using LegMask = std::bitset<kMaxLegs>;

}  // namespace

PairwiseKernel hadamard2(const PairwiseKernel& kernel) {
    PairwiseKernel nu;
    for (int wk = 0; wk < 2; ++wk)
        for (int wl = 0; wl < 2; ++wl) {
            ComplexValue s;
            for (int xk = 0; xk < 2; ++xk)
                for (int xl = 0; xl < 2; ++xl) {
                    const ComplexValue& e = kernel.at(xk, xl);
                    s = s + (((wk * xk + wl * xl) & 1) ? -e : e);
                }
            nu.entries[wk][wl] = s;
        }
    if (!kernel.name.empty()) nu.name = "hadamard2(" + kernel.name + ")";
    return nu;
}

DualGridModel dualize(const GridModel& model) {
    return {model.rows(), model.cols(), hadamard2(model.kernel())};
}

DualPartitionResult dual_partition_detailed(const DualGridModel& dual, const DualOptions& opts) {
    const int n = dual.rows * dual.cols;
    if (n > opts.max_vars)
        throw ResourceCapError("dual enumeration cap exceeded: N = " + std::to_string(n));

    const int nedges = dual.num_edges();
    const int nlegs = dual.num_legs();

    // support-based shortcut: a single surviving transform entry leaves at
    // most one candidate pattern
    int support = 0;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            if (!dual.nu.at(a, b).is_zero()) support |= 1 << (2 * a + b);
    if (support == 0) return {};
    if (!opts.force_general && (support == 0b1000 || support == 0b0001)) {
        // only (1,1) or only (0,0): candidate pattern is all-ones / all-zeros
        bool ones = support == 0b1000;
        if (ones) {
            for (int r = 0; r < dual.rows; ++r)
                for (int c = 0; c < dual.cols; ++c)
                    if (dual.node_degree(r, c) & 1) return {};  // parity check fails
        }
        ComplexValue v = ComplexValue::real(1.0);
        const ComplexValue& e = ones ? dual.nu.at(1, 1) : dual.nu.at(0, 0);
        for (int i = 0; i < nedges; ++i) v = v * e;
        return {v, v.magnitude()};
    }

    if (size_t(nlegs) > kMaxLegs)
        throw ResourceCapError("dual enumeration supports up to 128 half-edge variables");

    // XOR constraint per node over its incident legs; leg 2e / 2e+1 sit at the
    // first / second endpoint of edge e
    GridModel topo(dual.rows, dual.cols, dual.nu);
    auto edges = topo.edges();
    auto rows = std::vector<LegMask>(size_t(n));
    for (int e = 0; e < nedges; ++e) {
        rows[size_t(edges[size_t(e)].first)].set(size_t(2 * e));
        rows[size_t(edges[size_t(e)].second)].set(size_t(2 * e + 1));
    }

    // GF(2) elimination (homogeneous system, so the solution space is the
    // null space and the zero pattern is always a solution)
    std::vector<int> pivot_col;
    int rank = 0;
    for (int col = 0; col < nlegs && rank < n; ++col) {
        int sel = -1;
        for (int r = rank; r < n; ++r)
            if (rows[size_t(r)][size_t(col)]) {
                sel = r;
                break;
            }
        if (sel < 0) continue;
        std::swap(rows[size_t(rank)], rows[size_t(sel)]);
        for (int r = 0; r < n; ++r)
            if (r != rank && rows[size_t(r)][size_t(col)]) rows[size_t(r)] ^= rows[size_t(rank)];
        pivot_col.push_back(col);
        ++rank;
    }

    const int free_dims = nlegs - rank;
    if (free_dims > opts.max_free_dims)
        throw ResourceCapError("dual solution space too large: 2^" +
                               std::to_string(free_dims) + " patterns");

    // basis vector per free column: set the free leg, back-fill pivots
    std::vector<bool> is_pivot(size_t(nlegs), false);
    for (int c : pivot_col) is_pivot[size_t(c)] = true;
    std::vector<LegMask> basis;
    basis.reserve(size_t(free_dims));
    for (int col = 0; col < nlegs; ++col) {
        if (is_pivot[size_t(col)]) continue;
        LegMask v;
        v.set(size_t(col));
        for (int r = 0; r < rank; ++r)
            if (rows[size_t(r)][size_t(col)]) v.set(size_t(pivot_col[size_t(r)]));
        basis.push_back(v);
    }

    NeumaierSum zre, zim, zabs;
    LegMask pattern;  // gray-code walk over the null space
    auto accumulate = [&](const LegMask& p) {
        std::complex<double> v{1.0, 0.0};
        for (int e = 0; e < nedges; ++e) {
            const ComplexValue& f = dual.nu.at(p[size_t(2 * e)], p[size_t(2 * e + 1)]);
            if (f.is_zero()) return;
            v *= f.to_complex();
        }
        zre.add(v.real());
        zim.add(v.imag());
        zabs.add(std::abs(v));
    };
    accumulate(pattern);
    for (uint64_t idx = 1; idx < (uint64_t(1) << free_dims); ++idx) {
        pattern ^= basis[size_t(std::countr_zero(idx))];
        accumulate(pattern);
    }
    return {ComplexValue::cartesian(zre.value(), zim.value()), zabs.value()};
}

ComplexValue dual_partition(const DualGridModel& dual, const DualOptions& opts) {
    return dual_partition_detailed(dual, opts).z_d;
}

DualityReport duality_check(const GridModel& model, const DualOptions& opts) {
    if (model.num_vars() > opts.max_vars)
        throw ResourceCapError("duality check cap exceeded: N = " +
                               std::to_string(model.num_vars()));
    PartitionSummary primal = brute_force_summary(model, {opts.max_vars, 0});
    DualPartitionResult d = dual_partition_detailed(dualize(model), opts);

    DualityReport rep;
    rep.z_f = primal.z_f();
    rep.z_d = d.z_d.to_complex();
    rep.primal_zero = std::abs(rep.z_f) <= 1e-9 * primal.z_abs();
    rep.dual_zero = std::abs(rep.z_d) <= 1e-9 * d.abs_sum;
    rep.zero_equivalence = rep.primal_zero == rep.dual_zero;
    if (!rep.primal_zero) rep.ratio = rep.z_d / rep.z_f;
    return rep;
}

nlohmann::json to_json(const DualityReport& r) {
    nlohmann::json j{
        {"z_f", {r.z_f.real(), r.z_f.imag()}},
        {"z_d", {r.z_d.real(), r.z_d.imag()}},
        {"zero_equivalence", r.zero_equivalence},
    };
    if (r.ratio)
        j["ratio"] = {r.ratio->real(), r.ratio->imag()};
    else
        j["ratio"] = nullptr;
    return j;
}

}  // namespace fgmc
