#include "fgmc/estimators.hpp"

#include <algorithm>
#include <cmath>

namespace fgmc {

namespace {

std::complex<double> attach_quarter(double mag, int q) {
    switch (q & 3) {
        case 0: return {mag, 0.0};
        case 1: return {0.0, mag};
        case 2: return {-mag, 0.0};
        default: return {0.0, -mag};
    }
}

int upper_scale(const GridModel& m) {
    double u = m.log2_f_upper();
    return std::isfinite(u) ? int(std::ceil(u)) : 0;
}

int lower_scale(const GridModel& m) {
    double l = m.log2_f_lower();
    return std::isfinite(l) ? int(std::floor(l)) : 0;
}

void require_exact_bin(const PhaseBin& bin) {
    if (!bin.is_exact())
        throw UnsupportedEstimatorError(
            "partial partition estimators target the quarter-turn bins "
            "(plus, plus_i, minus, minus_i)");
}

}  // namespace

const char* estimator_name(EstimatorId id) {
    switch (id) {
        case EstimatorId::uniform_z: return "uniform_z";
        case EstimatorId::ogata_tanemura: return "ogata_tanemura";
        case EstimatorId::count_uniform: return "count_uniform";
        case EstimatorId::count_absgibbs: return "count_absgibbs";
    }
    return "?";
}

std::optional<EstimatorId> parse_estimator(std::string_view s) {
    for (EstimatorId id : {EstimatorId::uniform_z, EstimatorId::ogata_tanemura,
                           EstimatorId::count_uniform, EstimatorId::count_absgibbs})
        if (s == estimator_name(id)) return id;
    return std::nullopt;
}

UniformZEstimator::UniformZEstimator(const GridModel& m, PhaseBin bin, double log2_bin_count)
    : bin_(bin), quarter_(bin.quarter), log2_count_(log2_bin_count), scale_(upper_scale(m)) {
    require_exact_bin(bin);
}

void UniformZEstimator::add(const BinnedSample& s) {
    if (!(s.bin == bin_))
        throw ContractViolationError("uniform_z fed a sample from bin " + s.bin.name() +
                                     " instead of " + bin_.name());
    acc_.add(std::ldexp(s.value.magnitude(), -scale_));
    ++k_;
}

double UniformZEstimator::log2_estimate() const {
    if (k_ == 0) return -std::numeric_limits<double>::infinity();
    return log2_count_ - std::log2(double(k_)) + log2_or_neg_inf(acc_.value()) +
           double(scale_);
}

std::complex<double> UniformZEstimator::estimate() const {
    return attach_quarter(std::exp2(log2_estimate()), quarter_);
}

OgataTanemuraEstimator::OgataTanemuraEstimator(const GridModel& m, PhaseBin bin,
                                               double log2_bin_count)
    : bin_(bin), quarter_(bin.quarter), log2_count_(log2_bin_count), scale_(lower_scale(m)) {
    require_exact_bin(bin);
}

void OgataTanemuraEstimator::add(const BinnedSample& s) {
    if (!(s.bin == bin_))
        throw ContractViolationError("ogata_tanemura fed a sample from bin " +
                                     s.bin.name() + " instead of " + bin_.name());
    if (s.value.is_zero())
        throw PreconditionError("ogata_tanemura met f(x) = 0; kernel must have no zeros");
    acc_.add(std::ldexp(1.0 / s.value.magnitude(), scale_));
    ++k_;
}

double OgataTanemuraEstimator::log2_gamma() const {
    if (k_ == 0) return std::numeric_limits<double>::infinity();
    return log2_or_neg_inf(acc_.value()) - double(scale_) - std::log2(double(k_)) -
           log2_count_;
}

std::complex<double> OgataTanemuraEstimator::gamma() const {
    // 1/i^q = i^{-q}
    return attach_quarter(std::exp2(log2_gamma()), -quarter_);
}

std::complex<double> OgataTanemuraEstimator::z_estimate() const {
    return attach_quarter(std::exp2(log2_z()), quarter_);
}

CountUniformEstimator::CountUniformEstimator(const GridModel& m) : nvars_(m.num_vars()) {}

void CountUniformEstimator::add(const BinnedSample& s) {
    ++k_;
    if (s.bin.is_zero())
        ++zero_;
    else if (s.bin.is_exact())
        ++hits_[size_t(s.bin.quarter)];
    else
        ++other_;
}

double CountUniformEstimator::log2_xi(int q) const {
    if (k_ == 0) return -std::numeric_limits<double>::infinity();
    return double(nvars_) + log2_or_neg_inf(double(hits_[size_t(q & 3)])) -
           std::log2(double(k_));
}

double CountUniformEstimator::xi(int q) const {
    if (k_ == 0) return 0.0;
    return std::ldexp(double(hits_[size_t(q & 3)]) / double(k_), nvars_);
}

double CountUniformEstimator::log2_xi_zero() const {
    if (k_ == 0) return -std::numeric_limits<double>::infinity();
    return double(nvars_) + log2_or_neg_inf(double(zero_)) - std::log2(double(k_));
}

CountAbsGibbsEstimator::CountAbsGibbsEstimator(const GridModel& m)
    : nvars_(m.num_vars()), scale_(lower_scale(m)) {
    if (!m.kernel().all_real())
        throw UnsupportedEstimatorError(
            "count_absgibbs solves the two sign bins only; with a complex kernel the "
            "four bins are underdetermined - use count_uniform instead");
    if (m.kernel().has_zero_entry())
        throw PreconditionError("count_absgibbs assumes no zero-valued assignments; "
                                "kernel must have no zero entries");
}

void CountAbsGibbsEstimator::add(const BinnedSample& s) {
    if (s.value.is_zero())
        throw PreconditionError("count_absgibbs met f(x) = 0");
    double r = std::ldexp(1.0 / s.value.magnitude(), scale_);
    gam_.add(r);
    lam_.add(s.value.re() < 0.0 ? -r : r);
    ++k_;
}

double CountAbsGibbsEstimator::lambda() const {
    return k_ ? std::ldexp(lam_.value() / double(k_), -scale_) : 0.0;
}

double CountAbsGibbsEstimator::gamma() const {
    return k_ ? std::ldexp(gam_.value() / double(k_), -scale_) : 0.0;
}

double CountAbsGibbsEstimator::log2_abs_lambda() const {
    return k_ ? log2_or_neg_inf(std::abs(lam_.value() / double(k_))) - double(scale_)
              : -std::numeric_limits<double>::infinity();
}

int CountAbsGibbsEstimator::lambda_sign() const {
    double v = lam_.value();
    return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0);
}

double CountAbsGibbsEstimator::log2_gamma() const {
    return k_ ? log2_or_neg_inf(gam_.value() / double(k_)) - double(scale_)
              : -std::numeric_limits<double>::infinity();
}

double CountAbsGibbsEstimator::ratio() const {
    double g = gam_.value();
    if (g <= 0.0) return 0.0;
    double r = lam_.value() / g;
    return std::clamp(r, -1.0, 1.0);
}

double CountAbsGibbsEstimator::log2_xplus() const {
    return double(nvars_ - 1) + log2_or_neg_inf(1.0 + ratio());
}

double CountAbsGibbsEstimator::log2_xminus() const {
    return double(nvars_ - 1) + log2_or_neg_inf(1.0 - ratio());
}

double CountAbsGibbsEstimator::xplus() const { return std::ldexp(1.0 + ratio(), nvars_ - 1); }

double CountAbsGibbsEstimator::xminus() const { return std::ldexp(1.0 - ratio(), nvars_ - 1); }

ZfAssembly assemble_zf(const std::array<std::optional<BinEstimate>, 4>& estimates,
                       const std::array<bool, 4>& bin_nonempty) {
    ZfAssembly out;
    double var = 0.0;
    for (int q = 0; q < 4; ++q) {
        if (bin_nonempty[size_t(q)] && !estimates[size_t(q)].has_value())
            throw IncompleteInputError(std::string("missing estimate for nonempty bin ") +
                                       quarter_bin_name(q));
        if (!estimates[size_t(q)].has_value()) continue;
        const BinEstimate& e = *estimates[size_t(q)];
        out.z_f += e.value;
        out.sum_abs += std::abs(e.value);
        var += e.stderr_linear * e.stderr_linear;
    }
    out.stderr_linear = std::sqrt(var);
    out.cancellation = std::abs(out.z_f) < 0.01 * out.sum_abs;
    return out;
}

}  // namespace fgmc
