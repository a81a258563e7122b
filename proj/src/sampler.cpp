#include "fgmc/sampler.hpp"

#include "fgmc/errors.hpp"

namespace fgmc {

const char* scheme_name(SamplerConfig::Scheme s) {
    return s == SamplerConfig::Scheme::single_site ? "single-site" : "row-blocked";
}

UniformSampler::UniformSampler(const GridModel& model, const SamplerConfig& cfg)
    : model_(model), rng_(cfg.seed, cfg.chain_id), x_(model.rows(), model.cols()) {}

BinnedSample UniformSampler::next() {
    for (int r = 0; r < model_.rows(); ++r)
        x_.set_row_word(r, rng_.next_bits(model_.cols()));
    ComplexValue v = evaluate_f(model_, x_);
    return {x_, v, classify_phase(v)};
}

BinRejectionSampler::BinRejectionSampler(const GridModel& model, const SamplerConfig& cfg,
                                         PhaseBin target)
    : base_(model, cfg), target_(target), budget_per_sample_(cfg.max_rejection_draws) {}

BinnedSample BinRejectionSampler::next() {
    for (;;) {
        if (proposed_ >= budget_per_sample_ * (accepted_ + 1))
            throw EmptyBinSuspectedError(
                "rejection budget exhausted while sampling bin " + target_.name() +
                "; the bin may be empty or vanishingly small");
        ++proposed_;
        BinnedSample s = base_.next();
        if (s.bin == target_) {
            ++accepted_;
            return s;
        }
    }
}

GibbsSampler::GibbsSampler(const GridModel& model, const SamplerConfig& cfg)
    : model_(model),
      cfg_(cfg),
      rng_(cfg.seed, cfg.chain_id),
      x_(model.rows(), model.cols()),
      alpha_(size_t(model.cols()) * 2) {
    if (model.kernel().has_zero_entry())
        throw PreconditionError(
            "Gibbs sampling over |f| requires a kernel with no zero entries");
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) w_[a][b] = model.kernel().at(a, b).magnitude();
    for (int r = 0; r < model_.rows(); ++r)
        x_.set_row_word(r, rng_.next_bits(model_.cols()));
    for (int s = 0; s < cfg_.burn_in; ++s) sweep();
}

void GibbsSampler::set_state(const Assignment& x) {
    if (x.rows() != model_.rows() || x.cols() != model_.cols())
        throw DimensionError("state shape does not match model");
    x_ = x;
}

void GibbsSampler::sweep() {
    if (cfg_.scheme == SamplerConfig::Scheme::single_site)
        sweep_single_site();
    else
        sweep_row_blocked();
}

double GibbsSampler::site_conditional_p1(int r, int c) const {
    double w0 = 1.0, w1 = 1.0;
    if (r > 0) {
        int u = x_.at(r - 1, c);
        w0 *= w_[u][0];
        w1 *= w_[u][1];
    }
    if (r + 1 < model_.rows()) {
        int d = x_.at(r + 1, c);
        w0 *= w_[0][d];
        w1 *= w_[1][d];
    }
    if (c > 0) {
        int l = x_.at(r, c - 1);
        w0 *= w_[l][0];
        w1 *= w_[l][1];
    }
    if (c + 1 < model_.cols()) {
        int rt = x_.at(r, c + 1);
        w0 *= w_[0][rt];
        w1 *= w_[1][rt];
    }
    return w1 / (w0 + w1);
}

void GibbsSampler::sweep_single_site() {
    for (int r = 0; r < model_.rows(); ++r)
        for (int c = 0; c < model_.cols(); ++c)
            x_.set(r, c, rng_.next_double() < site_conditional_p1(r, c));
}

void GibbsSampler::resample_row(int r) {
    const int cols = model_.cols();
    const int rows = model_.rows();
    // forward filtering over the row chain, normalized per column
    for (int c = 0; c < cols; ++c) {
        double ev0 = 1.0, ev1 = 1.0;
        if (r > 0) {
            int u = x_.at(r - 1, c);
            ev0 *= w_[u][0];
            ev1 *= w_[u][1];
        }
        if (r + 1 < rows) {
            int d = x_.at(r + 1, c);
            ev0 *= w_[0][d];
            ev1 *= w_[1][d];
        }
        double a0, a1;
        if (c == 0) {
            a0 = ev0;
            a1 = ev1;
        } else {
            double p0 = alpha_[size_t(c - 1) * 2], p1 = alpha_[size_t(c - 1) * 2 + 1];
            a0 = ev0 * (p0 * w_[0][0] + p1 * w_[1][0]);
            a1 = ev1 * (p0 * w_[0][1] + p1 * w_[1][1]);
        }
        double norm = a0 + a1;
        alpha_[size_t(c) * 2] = a0 / norm;
        alpha_[size_t(c) * 2 + 1] = a1 / norm;
    }
    // backward drawing
    int prev = rng_.next_double() < alpha_[size_t(cols - 1) * 2 + 1];
    x_.set(r, cols - 1, prev);
    for (int c = cols - 2; c >= 0; --c) {
        double b0 = alpha_[size_t(c) * 2] * w_[0][prev];
        double b1 = alpha_[size_t(c) * 2 + 1] * w_[1][prev];
        prev = rng_.next_double() < b1 / (b0 + b1);
        x_.set(r, c, prev);
    }
}

void GibbsSampler::sweep_row_blocked() {
    for (int r = 0; r < model_.rows(); ++r) resample_row(r);
}

BinnedSample GibbsSampler::next() {
    for (int s = 0; s < cfg_.thinning; ++s) sweep();
    ComplexValue v = evaluate_f(model_, x_);
    return {x_, v, classify_phase(v)};
}

}  // namespace fgmc
