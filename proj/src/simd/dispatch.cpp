#include "fgmc/simd/simd.hpp"

#include <cstdlib>
#include <cstring>

namespace fgmc::simd {

namespace {

Level detect() {
    if (const char* env = std::getenv("FGMC_SIMD")) {
        if (std::strcmp(env, "scalar") == 0) return Level::scalar;
#ifdef FGMC_HAVE_AVX2
        if (std::strcmp(env, "avx2") == 0) return Level::avx2;
#endif
    }
#ifdef FGMC_HAVE_AVX2
    if (__builtin_cpu_supports("avx2")) return Level::avx2;
#endif
    return Level::scalar;
}

}  // namespace

Level active_level() {
    static const Level level = detect();
    return level;
}

const char* level_name(Level l) {
    switch (l) {
        case Level::avx2: return "avx2";
        default: return "scalar";
    }
}

void site_step(const double* src, double* dst, size_t nstates, const SiteStep& st) {
#ifdef FGMC_HAVE_AVX2
    if (active_level() == Level::avx2) {
        site_step_avx2(src, dst, nstates, st);
        return;
    }
#endif
    site_step_scalar(src, dst, nstates, st);
}

double array_max(const double* p, size_t n) {
#ifdef FGMC_HAVE_AVX2
    if (active_level() == Level::avx2) return array_max_avx2(p, n);
#endif
    return array_max_scalar(p, n);
}

void array_scale(double* p, size_t n, double c) {
#ifdef FGMC_HAVE_AVX2
    if (active_level() == Level::avx2) {
        array_scale_avx2(p, n, c);
        return;
    }
#endif
    array_scale_scalar(p, n, c);
}

}  // namespace fgmc::simd
