#pragma once

#include <array>
#include <complex>
#include <string>

#include <gmpxx.h>
#include <json.hpp>

#include "fgmc/phase.hpp"

namespace fgmc {

// Exact (or exactly-contracted) per-bin results. Z_b for the quarter bin q is
// sum_mag * i^q with sum_mag >= 0; counts are exact integers. log2_mag stays
// valid even when the linear value overflows a double.
struct BinData {
    double sum_mag = 0.0;
    double log2_mag = -std::numeric_limits<double>::infinity();
    mpz_class count{0};

    std::complex<double> z(int q) const {
        switch (q & 3) {
            case 0: return {sum_mag, 0.0};
            case 1: return {0.0, sum_mag};
            case 2: return {-sum_mag, 0.0};
            default: return {0.0, -sum_mag};
        }
    }
};

struct PartitionSummary {
    std::string method;  // "brute" | "transfer"
    int rows = 0, cols = 0;
    std::array<BinData, 4> bins;
    mpz_class zero_count{0};
    // assignments whose value is off every quarter axis (possible only for
    // kernels with off-axis entries; brute force only)
    std::complex<double> other_sum{0.0, 0.0};
    double other_abs_sum = 0.0;
    mpz_class other_count{0};

    std::complex<double> z_f() const;
    double z_abs() const;
    double log2_z_abs() const;
    mpz_class total_count() const;

    nlohmann::json to_json() const;
};

std::string mpz_to_decimal(const mpz_class& v);
double mpz_log2(const mpz_class& v);  // -inf for 0

}  // namespace fgmc
