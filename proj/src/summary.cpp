#include "fgmc/summary.hpp"

#include <cmath>

#include "fgmc/util.hpp"

namespace fgmc {

std::complex<double> PartitionSummary::z_f() const {
    std::complex<double> z = other_sum;
    for (int q = 0; q < 4; ++q) z += bins[q].z(q);
    return z;
}

double PartitionSummary::z_abs() const {
    double s = other_abs_sum;
    for (const auto& b : bins) s += b.sum_mag;
    return s;
}

double PartitionSummary::log2_z_abs() const {
    double lmax = log2_or_neg_inf(other_abs_sum);
    for (const auto& b : bins) lmax = std::max(lmax, b.log2_mag);
    if (std::isinf(lmax)) return lmax;
    double acc = other_abs_sum > 0.0 ? std::exp2(log2_or_neg_inf(other_abs_sum) - lmax) : 0.0;
    for (const auto& b : bins)
        if (b.sum_mag > 0.0 || std::isfinite(b.log2_mag)) acc += std::exp2(b.log2_mag - lmax);
    return lmax + std::log2(acc);
}

mpz_class PartitionSummary::total_count() const {
    mpz_class t = zero_count + other_count;
    for (const auto& b : bins) t += b.count;
    return t;
}

std::string mpz_to_decimal(const mpz_class& v) { return v.get_str(10); }

double mpz_log2(const mpz_class& v) {
    if (v == 0) return -std::numeric_limits<double>::infinity();
    signed long exp = 0;
    double m = mpz_get_d_2exp(&exp, v.get_mpz_t());
    return std::log2(std::abs(m)) + double(exp);
}

nlohmann::json PartitionSummary::to_json() const {
    nlohmann::json jb;
    for (int q = 0; q < 4; ++q) {
        auto zq = bins[q].z(q);
        jb[quarter_bin_name(q)] = {
            {"sum", {zq.real(), zq.imag()}},
            {"log2_mag", bins[q].log2_mag},
            {"count", mpz_to_decimal(bins[q].count)},
        };
    }
    nlohmann::json j{
        {"method", method},
        {"rows", rows},
        {"cols", cols},
        {"bins", jb},
        {"zero_count", mpz_to_decimal(zero_count)},
        {"z_f", {z_f().real(), z_f().imag()}},
        {"z_abs", z_abs()},
        {"log2_z_abs", log2_z_abs()},
    };
    if (other_count != 0) {
        j["other"] = {{"sum", {other_sum.real(), other_sum.imag()}},
                      {"abs_sum", other_abs_sum},
                      {"count", mpz_to_decimal(other_count)}};
    }
    return j;
}

}  // namespace fgmc
