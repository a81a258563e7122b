#pragma once

#include <cmath>
#include <cstdint>

namespace fgmc {

// Neumaier-compensated accumulator. Safe to sum terms of wildly mixed
// magnitude without losing the small ones.
struct NeumaierSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double x) {
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x)) {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }

    double value() const { return sum + comp; }
};

inline double log2_or_neg_inf(double x) {
    return x > 0.0 ? std::log2(x) : -std::numeric_limits<double>::infinity();
}

}  // namespace fgmc
