#include "fgmc/simd/simd.hpp"

namespace fgmc::simd {

void site_step_scalar(const double* src, double* dst, size_t nstates, const SiteStep& st) {
    const size_t jmask = size_t(1) << st.bit;
    for (size_t s = 0; s < nstates; ++s) {
        const int x = int((s >> st.bit) & 1u);
        const int l = st.has_left ? int((s >> (st.bit - 1)) & 1u) : 0;
        const size_t s0 = s & ~jmask;
        const size_t s1 = s | jmask;
        const double w0 = st.w[l][0][x], w1 = st.w[l][1][x];
        const int d0 = st.dq[l][0][x], d1 = st.dq[l][1][x];
        for (int q = 0; q < 4; ++q) {
            dst[size_t(q) * nstates + s] =
                src[size_t((q - d0) & 3) * nstates + s0] * w0 +
                src[size_t((q - d1) & 3) * nstates + s1] * w1;
        }
    }
}

double array_max_scalar(const double* p, size_t n) {
    double m = 0.0;
    for (size_t i = 0; i < n; ++i)
        if (p[i] > m) m = p[i];
    return m;
}

void array_scale_scalar(double* p, size_t n, double c) {
    for (size_t i = 0; i < n; ++i) p[i] *= c;
}

}  // namespace fgmc::simd
