#include "fgmc/phase.hpp"

#include <numbers>

namespace fgmc {

std::string PhaseBin::name() const {
    switch (kind) {
        case Kind::Exact: return quarter_bin_name(quarter);
        case Kind::Zero: return "zero";
        case Kind::General: return "general(" + std::to_string(angle) + ")";
    }
    return "?";
}

std::optional<PhaseBin> PhaseBin::parse(std::string_view s) {
    for (int q = 0; q < 4; ++q)
        if (s == quarter_bin_name(q)) return exact(q);
    if (s == "zero") return zero();
    return std::nullopt;
}

PhaseBin classify_phase(const ComplexValue& v, double tol) {
    if (v.is_zero()) return PhaseBin::zero();
    if (v.is_quarter()) return PhaseBin::exact(v.quarter_index());
    constexpr double half_pi = std::numbers::pi / 2.0;
    double a = std::atan2(v.im(), v.re());
    if (a < 0.0) a += 2.0 * std::numbers::pi;
    for (int q = 0; q <= 4; ++q) {
        if (std::abs(a - q * half_pi) < tol) return PhaseBin::exact(q % 4);
    }
    return PhaseBin::general(a);
}

}  // namespace fgmc
