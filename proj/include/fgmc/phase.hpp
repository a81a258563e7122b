#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace fgmc {

// A complex scalar that keeps its phase exact whenever the value lies on one
// of the four half-axes {+r, +ir, -r, -ir}. Such values are stored as a
// nonnegative magnitude plus a quarter-turn index q in {0,1,2,3}, meaning
// mag * i^q. Products of quarter-turn values never leave that set (indices
// add mod 4), so phase-bin membership of long factor products is exact and
// never depends on a float threshold. Values off the axes fall back to a
// plain cartesian representation.
class ComplexValue {
  public:
    ComplexValue() = default;  // zero

    static ComplexValue quarter(double mag, int q) {
        ComplexValue v;
        if (mag < 0.0) {
            mag = -mag;
            q += 2;
        }
        v.mag_ = mag;
        v.quarter_ = ((q % 4) + 4) % 4;
        if (mag == 0.0) v.quarter_ = 0;
        switch (v.quarter_) {
            case 0: v.re_ = mag; v.im_ = 0.0; break;
            case 1: v.re_ = 0.0; v.im_ = mag; break;
            case 2: v.re_ = -mag; v.im_ = 0.0; break;
            case 3: v.re_ = 0.0; v.im_ = -mag; break;
        }
        return v;
    }

    // Snaps to quarter-turn form when one component is exactly zero.
    static ComplexValue cartesian(double re, double im) {
        if (im == 0.0) return quarter(re < 0.0 ? -re : re, re < 0.0 ? 2 : 0);
        if (re == 0.0) return quarter(im < 0.0 ? -im : im, im < 0.0 ? 3 : 1);
        ComplexValue v;
        v.quarter_ = -1;
        v.re_ = re;
        v.im_ = im;
        v.mag_ = std::hypot(re, im);
        return v;
    }

    static ComplexValue real(double x) { return cartesian(x, 0.0); }
    static ComplexValue from_complex(std::complex<double> z) { return cartesian(z.real(), z.imag()); }

    bool is_quarter() const { return quarter_ >= 0; }
    bool is_zero() const { return mag_ == 0.0; }
    double magnitude() const { return mag_; }
    int quarter_index() const { return quarter_; }  // valid only when is_quarter()
    double re() const { return re_; }
    double im() const { return im_; }
    std::complex<double> to_complex() const { return {re_, im_}; }

    ComplexValue operator*(const ComplexValue& o) const {
        if (is_quarter() && o.is_quarter())
            return quarter(mag_ * o.mag_, quarter_ + o.quarter_);
        return from_complex(to_complex() * o.to_complex());
    }

    ComplexValue operator+(const ComplexValue& o) const {
        if (is_quarter() && o.is_quarter() && (quarter_ & 1) == (o.quarter_ & 1)) {
            // same axis: signed combine, result stays on the axis exactly
            int axis = quarter_ & 1;
            double a = (quarter_ == axis) ? mag_ : -mag_;
            double b = (o.quarter_ == axis) ? o.mag_ : -o.mag_;
            double s = a + b;
            return quarter(s < 0.0 ? -s : s, s < 0.0 ? axis + 2 : axis);
        }
        return cartesian(re_ + o.re_, im_ + o.im_);
    }

    ComplexValue operator-() const {
        if (is_quarter()) return quarter(mag_, quarter_ + 2);
        return cartesian(-re_, -im_);
    }

    ComplexValue operator-(const ComplexValue& o) const { return *this + (-o); }

    ComplexValue scaled(double c) const {
        if (is_quarter()) return quarter(mag_ * c, c < 0.0 ? quarter_ + 2 : quarter_);
        return cartesian(re_ * c, im_ * c);
    }

    friend bool operator==(const ComplexValue& a, const ComplexValue& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

  private:
    double mag_ = 0.0;
    int quarter_ = 0;  // -1 when off-axis
    double re_ = 0.0;
    double im_ = 0.0;
};

// Which slice of the complex plane a value's argument falls in. Exact(q)
// means arg = q*pi/2; kernels whose entries are all quarter-turn values can
// only ever produce Exact or Zero.
struct PhaseBin {
    enum class Kind : std::uint8_t { Exact, Zero, General };

    Kind kind = Kind::Zero;
    int quarter = 0;     // Exact only
    double angle = 0.0;  // General only, in [0, 2pi)

    static PhaseBin exact(int q) { return {Kind::Exact, ((q % 4) + 4) % 4, 0.0}; }
    static PhaseBin zero() { return {Kind::Zero, 0, 0.0}; }
    static PhaseBin general(double a) { return {Kind::General, 0, a}; }

    bool is_exact() const { return kind == Kind::Exact; }
    bool is_zero() const { return kind == Kind::Zero; }

    friend bool operator==(const PhaseBin& a, const PhaseBin& b) {
        if (a.kind != b.kind) return false;
        if (a.kind == Kind::Exact) return a.quarter == b.quarter;
        if (a.kind == Kind::General) return a.angle == b.angle;
        return true;
    }

    std::string name() const;
    static std::optional<PhaseBin> parse(std::string_view s);
};

// Bin names used in every external interface (JSON keys, CLI flags).
inline const char* quarter_bin_name(int q) {
    static const char* names[4] = {"plus", "plus_i", "minus", "minus_i"};
    return names[((q % 4) + 4) % 4];
}

// Zero magnitude -> Zero; exact quarter-turn values keep their index; other
// values are classified by angle, snapped to a quarter bin when within tol.
PhaseBin classify_phase(const ComplexValue& v, double tol = 1e-12);

}  // namespace fgmc
