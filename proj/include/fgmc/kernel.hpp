#pragma once

#include <array>
#include <complex>
#include <string>
#include <string_view>

#include <json.hpp>

#include "fgmc/phase.hpp"

namespace fgmc {

// 2x2 table of pairwise factor values, indexed by the two incident binary
// variables in (left-or-upper, right-or-lower) order.
struct PairwiseKernel {
    std::array<std::array<ComplexValue, 2>, 2> entries{};
    std::string name;  // preset label, empty for ad-hoc kernels

    const ComplexValue& at(int a, int b) const { return entries[a][b]; }

    bool has_zero_entry() const;
    bool all_quarter() const;
    bool all_real() const;  // every entry on the real axis (or zero)
    double max_abs() const;
    double min_abs() const;

    PairwiseKernel scaled(double c) const;

    // Presets: "neg13", "cplx15i", "pm(<complex>)" e.g. pm(1), pm(-2.5), pm(i).
    static PairwiseKernel preset(std::string_view spec);

    // JSON schema: {"entries": [[[re,im],[re,im]],[[re,im],[re,im]]]},
    // entries[a][b] for variable values (a, b).
    static PairwiseKernel from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;

    static PairwiseKernel load_file(const std::string& path);

    friend bool operator==(const PairwiseKernel& a, const PairwiseKernel& b) {
        return a.entries == b.entries;
    }
};

// Accepts "1", "-2.5", "i", "-i", "2i", "1+2i", "1.5-0.5i".
std::complex<double> parse_complex_literal(std::string_view s);

}  // namespace fgmc
