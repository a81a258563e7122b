#include "fgmc/eval.hpp"

#include <bit>
#include <complex>

#include "fgmc/errors.hpp"

namespace fgmc {

namespace {

void check_shape(const GridModel& model, const Assignment& x) {
    if (x.rows() != model.rows() || x.cols() != model.cols())
        throw DimensionError("assignment shape does not match model");
}

inline void count_pairs(uint64_t u, uint64_t v, uint64_t mask, int64_t width,
                        EdgeCategoryCounts& out) {
    int64_t c11 = std::popcount(u & v & mask);
    int64_t c10 = std::popcount(u & ~v & mask);
    int64_t c01 = std::popcount(~u & v & mask);
    out.c[1][1] += c11;
    out.c[1][0] += c10;
    out.c[0][1] += c01;
    out.c[0][0] += width - c11 - c10 - c01;
}

// complex integer power by squaring; exponents are edge counts
std::complex<double> cpow_int(std::complex<double> z, int64_t e) {
    std::complex<double> r{1.0, 0.0};
    while (e > 0) {
        if (e & 1) r *= z;
        z *= z;
        e >>= 1;
    }
    return r;
}

}  // namespace

EdgeCategoryCounts count_edge_categories(const GridModel& model, const Assignment& x) {
    check_shape(model, x);
    EdgeCategoryCounts out;
    const int rows = model.rows(), cols = model.cols();
    const uint64_t full = x.row_mask();
    const uint64_t hmask = cols == 1 ? 0 : (full >> 1);
    for (int r = 0; r < rows; ++r) {
        uint64_t w = x.row_word(r);
        if (cols > 1) count_pairs(w, w >> 1, hmask, cols - 1, out);
        if (r + 1 < rows) count_pairs(w, x.row_word(r + 1), full, cols, out);
    }
    return out;
}

EdgeCategoryCounts count_edge_categories_by_edge(const GridModel& model, const Assignment& x) {
    check_shape(model, x);
    EdgeCategoryCounts out;
    for (auto [k, l] : model.edges()) ++out.c[x.bit(k)][x.bit(l)];
    return out;
}

ComplexValue evaluate_f(const GridModel& model, const Assignment& x) {
    EdgeCategoryCounts cc = count_edge_categories(model, x);
    if (model.kernel_all_quarter()) {
        int q = 0;
        double mag = 1.0;
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
                int64_t e = cc.c[a][b];
                if (e == 0) continue;
                if (model.entry_zero(a, b)) return ComplexValue();
                mag *= model.mag_pow(a, b, e);
                q = int((q + model.entry_quarter(a, b) * e) & 3);
            }
        return ComplexValue::quarter(mag, q);
    }
    std::complex<double> v{1.0, 0.0};
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            if (cc.c[a][b] > 0) v *= cpow_int(model.kernel().at(a, b).to_complex(), cc.c[a][b]);
    return ComplexValue::from_complex(v);
}

double abs_f(const GridModel& model, const Assignment& x) {
    EdgeCategoryCounts cc = count_edge_categories(model, x);
    double mag = 1.0;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) mag *= model.mag_pow(a, b, cc.c[a][b]);
    return mag;
}

}  // namespace fgmc
