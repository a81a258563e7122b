#pragma once

#include <cstddef>
#include <cstdint>

namespace fgmc::simd {

enum class Level { scalar, avx2 };

// Detected at first use; the FGMC_SIMD env var ("scalar" or "avx2") overrides.
Level active_level();
const char* level_name(Level l);

// One raster-scan step of the phase-resolved state contraction. src and dst
// are four planes of `nstates` doubles (plane q holds the accumulated
// magnitude of partial products whose quarter-turn phase is q). The step
// replaces frontier slot `bit` with the new variable: every output state
// combines exactly two input states (old slot value 0 and 1), so scalar and
// vector variants produce bit-identical results (kernels are built with
// fp-contract off).
struct SiteStep {
    int bit = 0;            // frontier slot being replaced
    bool has_left = false;  // horizontal edge to slot bit-1 present
    double w[2][2][2];      // [left][old_bit][new_bit] combined |kernel| weight
    int dq[2][2][2];        // matching quarter-turn phase increments
};

void site_step(const double* src, double* dst, size_t nstates, const SiteStep& st);
void site_step_scalar(const double* src, double* dst, size_t nstates, const SiteStep& st);

double array_max(const double* p, size_t n);
void array_scale(double* p, size_t n, double c);
double array_max_scalar(const double* p, size_t n);
void array_scale_scalar(double* p, size_t n, double c);

#ifdef FGMC_HAVE_AVX2
void site_step_avx2(const double* src, double* dst, size_t nstates, const SiteStep& st);
double array_max_avx2(const double* p, size_t n);
void array_scale_avx2(double* p, size_t n, double c);
#endif

}  // namespace fgmc::simd
