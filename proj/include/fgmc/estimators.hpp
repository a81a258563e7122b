#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string_view>
#include <vector>

#include "fgmc/errors.hpp"
#include "fgmc/grid.hpp"
#include "fgmc/sampler.hpp"
#include "fgmc/util.hpp"

namespace fgmc {

enum class EstimatorId { uniform_z, ogata_tanemura, count_uniform, count_absgibbs };

const char* estimator_name(EstimatorId id);
std::optional<EstimatorId> parse_estimator(std::string_view s);

struct TracePoint {
    uint64_t k = 0;
    double log2_mag = -std::numeric_limits<double>::infinity();
    std::complex<double> value{0.0, 0.0};
};

struct EstimatorTrace {
    EstimatorId estimator{};
    std::optional<PhaseBin> bin;  // nullopt = whole-space statistic
    uint64_t chain_id = 0;
    std::vector<TracePoint> running;
    const TracePoint& final() const { return running.back(); }
};

// Every quarter-bin estimator below factors the bin's fixed phase out of the
// accumulator: sums run over nonnegative magnitudes scaled by a fixed power
// of two (chosen from the model's per-edge extremes), and the exact phase
// i^q is re-attached at the end. This keeps the internal state real and
// overflow-free even at hundreds of variables.

// Running (|X_bin|/k) * sum of f over samples uniform on X_bin.
class UniformZEstimator {
  public:
    UniformZEstimator(const GridModel& m, PhaseBin bin, double log2_bin_count);
    void add(const BinnedSample& s);  // ContractViolationError on wrong bin
    uint64_t count() const { return k_; }
    double log2_estimate() const;
    std::complex<double> estimate() const;

  private:
    PhaseBin bin_;
    int quarter_;
    double log2_count_;
    int scale_;
    NeumaierSum acc_;
    uint64_t k_ = 0;
};

// Reciprocal-weight statistic over samples drawn from the bin-restricted
// |f| distribution: gamma = (1/(k |X_bin|)) sum 1/f, whose expectation is
// 1/Z_bin; the reported Z estimate is its reciprocal.
class OgataTanemuraEstimator {
  public:
    OgataTanemuraEstimator(const GridModel& m, PhaseBin bin, double log2_bin_count);
    void add(const BinnedSample& s);
    uint64_t count() const { return k_; }
    double log2_gamma() const;
    std::complex<double> gamma() const;
    double log2_z() const { return -log2_gamma(); }
    std::complex<double> z_estimate() const;

  private:
    PhaseBin bin_;
    int quarter_;
    double log2_count_;
    int scale_;
    NeumaierSum acc_;
    uint64_t k_ = 0;
};

// Scaled occupancy counts from uniform samples: xi_b = 2^N * hits_b / k.
// Integer hit counters keep the partition exact: sum of hits over all bins
// (including zero and off-axis) equals k for every prefix.
class CountUniformEstimator {
  public:
    explicit CountUniformEstimator(const GridModel& m);
    void add(const BinnedSample& s);
    uint64_t count() const { return k_; }
    uint64_t hits(int q) const { return hits_[size_t(q & 3)]; }
    uint64_t zero_hits() const { return zero_; }
    uint64_t other_hits() const { return other_; }
    double log2_xi(int q) const;
    double xi(int q) const;
    double log2_xi_zero() const;

  private:
    int nvars_;
    std::array<uint64_t, 4> hits_{};
    uint64_t zero_ = 0, other_ = 0, k_ = 0;
};

// Reciprocal statistics over samples from the |f| distribution, solved for
// the two sign-bin cardinalities:
//   |X+| + |X-| = 2^N,   |X+| - |X-| ~= (lambda/gamma) 2^N
// Only defined for real kernels (four phase bins would leave the 2x2 system
// underdetermined); complex kernels are routed to CountUniformEstimator.
class CountAbsGibbsEstimator {
  public:
    explicit CountAbsGibbsEstimator(const GridModel& m);
    void add(const BinnedSample& s);
    uint64_t count() const { return k_; }
    double lambda() const;  // (1/k) sum 1/f
    double gamma() const;   // (1/k) sum 1/|f|
    double log2_abs_lambda() const;
    int lambda_sign() const;
    double log2_gamma() const;
    double ratio() const;  // lambda/gamma clamped to [-1, 1]
    double log2_xplus() const;
    double log2_xminus() const;
    double xplus() const;
    double xminus() const;

  private:
    int nvars_;
    int scale_;
    NeumaierSum lam_, gam_;
    uint64_t k_ = 0;
};

// ---- per-chain trace runners ------------------------------------------------

inline uint64_t trace_stride(uint64_t total, int trace_points) {
    uint64_t pts = trace_points > 0 ? uint64_t(trace_points) : 1;
    return std::max<uint64_t>(1, total / pts);
}

template <class SamplerT>
EstimatorTrace run_uniform_z_chain(const GridModel& m, PhaseBin bin, double log2_bin_count,
                                   SamplerT& sampler, uint64_t samples, int trace_points,
                                   uint64_t chain_id) {
    UniformZEstimator est(m, bin, log2_bin_count);
    EstimatorTrace tr{EstimatorId::uniform_z, bin, chain_id, {}};
    const uint64_t stride = trace_stride(samples, trace_points);
    for (uint64_t k = 1; k <= samples; ++k) {
        est.add(sampler.next());
        if (k % stride == 0 || k == samples)
            tr.running.push_back({k, est.log2_estimate(), est.estimate()});
    }
    return tr;
}

template <class SamplerT>
EstimatorTrace run_ogata_tanemura_chain(const GridModel& m, PhaseBin bin,
                                        double log2_bin_count, SamplerT& sampler,
                                        uint64_t samples, int trace_points,
                                        uint64_t chain_id) {
    OgataTanemuraEstimator est(m, bin, log2_bin_count);
    EstimatorTrace tr{EstimatorId::ogata_tanemura, bin, chain_id, {}};
    const uint64_t stride = trace_stride(samples, trace_points);
    for (uint64_t k = 1; k <= samples; ++k) {
        est.add(sampler.next());
        if (k % stride == 0 || k == samples)
            tr.running.push_back({k, est.log2_z(), est.z_estimate()});
    }
    return tr;
}

struct CountUniformResult {
    std::array<EstimatorTrace, 4> xi;
    EstimatorTrace xi_zero;
    std::array<uint64_t, 4> hits{};
    uint64_t zero_hits = 0, other_hits = 0, total = 0;
};

template <class SamplerT>
CountUniformResult run_count_uniform_chain(const GridModel& m, SamplerT& sampler,
                                           uint64_t samples, int trace_points,
                                           uint64_t chain_id) {
    CountUniformEstimator est(m);
    CountUniformResult res;
    for (int q = 0; q < 4; ++q)
        res.xi[size_t(q)] = {EstimatorId::count_uniform, PhaseBin::exact(q), chain_id, {}};
    res.xi_zero = {EstimatorId::count_uniform, PhaseBin::zero(), chain_id, {}};
    const uint64_t stride = trace_stride(samples, trace_points);
    for (uint64_t k = 1; k <= samples; ++k) {
        est.add(sampler.next());
        if (k % stride == 0 || k == samples) {
            for (int q = 0; q < 4; ++q)
                res.xi[size_t(q)].running.push_back(
                    {k, est.log2_xi(q), {est.xi(q), 0.0}});
            res.xi_zero.running.push_back(
                {k, est.log2_xi_zero(), {std::exp2(est.log2_xi_zero()), 0.0}});
        }
    }
    res.hits = {est.hits(0), est.hits(1), est.hits(2), est.hits(3)};
    res.zero_hits = est.zero_hits();
    res.other_hits = est.other_hits();
    res.total = est.count();
    return res;
}

struct AbsGibbsCountResult {
    double ratio = 0.0;
    double log2_xplus = 0.0, log2_xminus = 0.0;
    double xplus = 0.0, xminus = 0.0;
    EstimatorTrace lambda_trace, gamma_trace;
};

template <class SamplerT>
AbsGibbsCountResult run_count_absgibbs_chain(const GridModel& m, SamplerT& sampler,
                                             uint64_t samples, int trace_points,
                                             uint64_t chain_id) {
    CountAbsGibbsEstimator est(m);
    AbsGibbsCountResult res;
    res.lambda_trace = {EstimatorId::count_absgibbs, std::nullopt, chain_id, {}};
    res.gamma_trace = {EstimatorId::count_absgibbs, std::nullopt, chain_id, {}};
    const uint64_t stride = trace_stride(samples, trace_points);
    for (uint64_t k = 1; k <= samples; ++k) {
        est.add(sampler.next());
        if (k % stride == 0 || k == samples) {
            res.lambda_trace.running.push_back(
                {k, est.log2_abs_lambda(), {est.lambda(), 0.0}});
            res.gamma_trace.running.push_back({k, est.log2_gamma(), {est.gamma(), 0.0}});
        }
    }
    res.ratio = est.ratio();
    res.log2_xplus = est.log2_xplus();
    res.log2_xminus = est.log2_xminus();
    res.xplus = est.xplus();
    res.xminus = est.xminus();
    return res;
}

// ---- combination ------------------------------------------------------------

struct BinEstimate {
    std::complex<double> value{0.0, 0.0};
    double stderr_linear = 0.0;
};

struct ZfAssembly {
    std::complex<double> z_f{0.0, 0.0};
    double stderr_linear = 0.0;  // per-bin errors combined in quadrature
    double sum_abs = 0.0;
    bool cancellation = false;  // |Z_f| < 1% of the summed bin magnitudes
};

// Sums one estimate per nonempty quarter bin into Z_f. Throws
// IncompleteInputError when a bin marked nonempty has no estimate.
ZfAssembly assemble_zf(const std::array<std::optional<BinEstimate>, 4>& estimates,
                       const std::array<bool, 4>& bin_nonempty);

}  // namespace fgmc
