#pragma once

#include <cstdint>
#include <vector>

#include "fgmc/errors.hpp"
#include "fgmc/eval.hpp"
#include "fgmc/grid.hpp"
#include "fgmc/rng.hpp"

namespace fgmc {

struct SamplerConfig {
    uint64_t seed = 0;
    uint64_t chain_id = 0;  // substream id; see PhiloxRng
    int burn_in = 100;      // sweeps discarded before the first sample
    int thinning = 1;       // sweeps per retained sample
    enum class Scheme { single_site, row_blocked } scheme = Scheme::row_blocked;
    // rejection budget: proposals allowed grow by this much per accepted sample
    uint64_t max_rejection_draws = 10'000'000;
};

const char* scheme_name(SamplerConfig::Scheme s);

struct BinnedSample {
    Assignment x;
    ComplexValue value;  // f(x)
    PhaseBin bin;        // classify_phase(value)
};

// I.i.d. fair-bit assignments; one 64-bit RNG word per row per sample.
class UniformSampler {
  public:
    UniformSampler(const GridModel& model, const SamplerConfig& cfg);
    BinnedSample next();

  private:
    const GridModel& model_;
    PhiloxRng rng_;
    Assignment x_;
};

// Uniform over one phase bin via rejection from UniformSampler. Throws
// EmptyBinSuspectedError once the proposal budget is exhausted.
class BinRejectionSampler {
  public:
    BinRejectionSampler(const GridModel& model, const SamplerConfig& cfg, PhaseBin target);
    BinnedSample next();
    uint64_t proposed() const { return proposed_; }
    uint64_t accepted() const { return accepted_; }
    double acceptance_rate() const {
        return proposed_ ? double(accepted_) / double(proposed_) : 0.0;
    }

  private:
    UniformSampler base_;
    PhaseBin target_;
    uint64_t budget_per_sample_;
    uint64_t proposed_ = 0, accepted_ = 0;
};

// Keeps only samples landing in one phase bin; used to restrict a |f|-chain
// to a bin (the restriction of the |f| distribution to a bin is exactly the
// bin's normalized f distribution).
template <class Base>
class BinFilteredSampler {
  public:
    BinFilteredSampler(Base& base, PhaseBin target, uint64_t budget = 10'000'000)
        : base_(base), target_(target), budget_(budget) {}

    BinnedSample next() {
        for (;;) {
            if (proposed_ >= budget_ * (accepted_ + 1))
                throw EmptyBinSuspectedError("bin filter budget exhausted for bin " +
                                             target_.name());
            ++proposed_;
            BinnedSample s = base_.next();
            if (s.bin == target_) {
                ++accepted_;
                return s;
            }
        }
    }

    uint64_t proposed() const { return proposed_; }
    uint64_t accepted() const { return accepted_; }

  private:
    Base& base_;
    PhaseBin target_;
    uint64_t budget_;
    uint64_t proposed_ = 0, accepted_ = 0;
};

// Markov chain targeting p(x) ~ |f(x)|. Requires a kernel with no zero
// entries (every conditional is then strictly positive and the chain is
// irreducible). Two sweep schemes:
//   single_site  - raster-order resampling of each variable from its
//                  conditional given the (up to four) neighbors;
//   row_blocked  - exact resampling of whole rows in raster order: the row
//                  conditional is a binary chain (horizontal couplings as
//                  transitions, vertical couplings as per-site evidence),
//                  sampled by forward filtering / backward drawing.
class GibbsSampler {
  public:
    GibbsSampler(const GridModel& model, const SamplerConfig& cfg);

    BinnedSample next();  // runs `thinning` sweeps, then snapshots

    // exposed for distribution-level tests
    const Assignment& state() const { return x_; }
    void set_state(const Assignment& x);
    double site_conditional_p1(int r, int c) const;
    void resample_row(int r);
    void sweep();

  private:
    void sweep_single_site();
    void sweep_row_blocked();

    const GridModel& model_;
    SamplerConfig cfg_;
    PhiloxRng rng_;
    Assignment x_;
    double w_[2][2];  // |kernel| magnitudes
    std::vector<double> alpha_;  // forward messages, 2 per column
};

}  // namespace fgmc
