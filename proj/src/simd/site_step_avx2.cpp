#include "fgmc/simd/simd.hpp"

#ifdef FGMC_HAVE_AVX2

#include <immintrin.h>

namespace fgmc::simd {

// States are processed in blocks of 2^(bit+1): within a block the lower half
// has new-bit 0 and the upper half new-bit 1, and each half splits again by
// the left-neighbor bit. All weights are constant on those contiguous
// subranges, so the inner loop is a pure two-term multiply-add.
void site_step_avx2(const double* src, double* dst, size_t nstates, const SiteStep& st) {
    if (st.bit < 3) {  // subranges shorter than one vector
        site_step_scalar(src, dst, nstates, st);
        return;
    }
    const size_t half = size_t(1) << st.bit;
    const size_t block = half << 1;
    const size_t sub = st.has_left ? half >> 1 : half;
    const int nleft = st.has_left ? 2 : 1;

    for (size_t base = 0; base < nstates; base += block) {
        for (int x = 0; x < 2; ++x) {
            for (int l = 0; l < nleft; ++l) {
                const size_t t0 = size_t(l) * sub;
                const double w0 = st.w[l][0][x], w1 = st.w[l][1][x];
                const int d0 = st.dq[l][0][x], d1 = st.dq[l][1][x];
                const __m256d vw0 = _mm256_set1_pd(w0);
                const __m256d vw1 = _mm256_set1_pd(w1);
                for (int q = 0; q < 4; ++q) {
                    const double* pa = src + size_t((q - d0) & 3) * nstates + base + t0;
                    const double* pb = src + size_t((q - d1) & 3) * nstates + base + half + t0;
                    double* pd = dst + size_t(q) * nstates + base + size_t(x) * half + t0;
                    for (size_t i = 0; i < sub; i += 4) {
                        __m256d a = _mm256_mul_pd(_mm256_loadu_pd(pa + i), vw0);
                        __m256d b = _mm256_mul_pd(_mm256_loadu_pd(pb + i), vw1);
                        _mm256_storeu_pd(pd + i, _mm256_add_pd(a, b));
                    }
                }
            }
        }
    }
}

double array_max_avx2(const double* p, size_t n) {
    __m256d vm = _mm256_setzero_pd();
    size_t i = 0;
    for (; i + 4 <= n; i += 4) vm = _mm256_max_pd(vm, _mm256_loadu_pd(p + i));
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, vm);
    double m = lanes[0];
    for (int k = 1; k < 4; ++k)
        if (lanes[k] > m) m = lanes[k];
    for (; i < n; ++i)
        if (p[i] > m) m = p[i];
    return m;
}

void array_scale_avx2(double* p, size_t n, double c) {
    const __m256d vc = _mm256_set1_pd(c);
    size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(p + i, _mm256_mul_pd(_mm256_loadu_pd(p + i), vc));
    for (; i < n; ++i) p[i] *= c;
}

}  // namespace fgmc::simd

#endif  // FGMC_HAVE_AVX2
