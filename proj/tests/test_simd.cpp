#include <doctest.h>

#include <vector>

#include "fgmc/rng.hpp"
#include "fgmc/simd/simd.hpp"

using namespace fgmc;

namespace {

simd::SiteStep random_step(PhiloxRng& rng, int bit, bool has_left) {
    simd::SiteStep st;
    st.bit = bit;
    st.has_left = has_left;
    for (int l = 0; l < 2; ++l)
        for (int b = 0; b < 2; ++b)
            for (int x = 0; x < 2; ++x) {
                st.w[l][b][x] = rng.next_double() * 2.0;
                st.dq[l][b][x] = int(rng.next_bits(2));
            }
    return st;
}

}  // namespace

TEST_CASE("site_step: dispatched variant is bit-identical to the scalar reference") {
    INFO("active simd level: " << simd::level_name(simd::active_level()));
    PhiloxRng rng(31337, 0);
    for (int cols : {1, 2, 3, 4, 6, 9}) {
        const size_t n = size_t(1) << cols;
        std::vector<double> src(4 * n), dst_a(4 * n, -1.0), dst_b(4 * n, -2.0);
        for (auto& v : src) v = rng.next_double();
        for (int bit = 0; bit < cols; ++bit) {
            for (bool has_left : {false, true}) {
                if (has_left && bit == 0) continue;
                auto st = random_step(rng, bit, has_left);
                simd::site_step_scalar(src.data(), dst_a.data(), n, st);
                simd::site_step(src.data(), dst_b.data(), n, st);
                for (size_t i = 0; i < 4 * n; ++i) REQUIRE(dst_a[i] == dst_b[i]);
            }
        }
    }
}

#ifdef FGMC_HAVE_AVX2
TEST_CASE("site_step: avx2 variant matches scalar when the cpu supports it") {
    if (!__builtin_cpu_supports("avx2")) {
        MESSAGE("cpu lacks avx2; skipping");
        return;
    }
    PhiloxRng rng(777, 3);
    const size_t n = size_t(1) << 10;
    std::vector<double> src(4 * n), dst_a(4 * n), dst_b(4 * n);
    for (auto& v : src) v = rng.next_double();
    for (int bit : {0, 2, 3, 4, 9}) {
        for (bool has_left : {false, true}) {
            if (has_left && bit == 0) continue;
            auto st = random_step(rng, bit, has_left);
            simd::site_step_scalar(src.data(), dst_a.data(), n, st);
            simd::site_step_avx2(src.data(), dst_b.data(), n, st);
            for (size_t i = 0; i < 4 * n; ++i) REQUIRE(dst_a[i] == dst_b[i]);
        }
    }
}
#endif

TEST_CASE("array reductions match their scalar references") {
    PhiloxRng rng(4242, 0);
    for (size_t n : {1ul, 3ul, 4ul, 17ul, 1024ul, 1031ul}) {
        std::vector<double> v(n), v2;
        for (auto& x : v) x = rng.next_double() * 100.0;
        v2 = v;
        CHECK(simd::array_max(v.data(), n) == simd::array_max_scalar(v.data(), n));
        double c = 0x1.0p-3;
        simd::array_scale(v.data(), n, c);
        simd::array_scale_scalar(v2.data(), n, c);
        for (size_t i = 0; i < n; ++i) CHECK(v[i] == v2[i]);
    }
}

TEST_CASE("site_step is a permutation-weighted two-term combine") {
    // identity tables (weight 1, shift 0, no left edge) must copy plane data
    // from both bit settings: dst[q][s] = src[q][s0] + src[q][s1]
    const size_t n = 8;
    std::vector<double> src(4 * n), dst(4 * n);
    for (size_t i = 0; i < 4 * n; ++i) src[i] = double(i);
    simd::SiteStep st{};
    st.bit = 1;
    st.has_left = false;
    for (int l = 0; l < 2; ++l)
        for (int b = 0; b < 2; ++b)
            for (int x = 0; x < 2; ++x) {
                st.w[l][b][x] = 1.0;
                st.dq[l][b][x] = 0;
            }
    simd::site_step_scalar(src.data(), dst.data(), n, st);
    for (size_t q = 0; q < 4; ++q)
        for (size_t s = 0; s < n; ++s) {
            size_t s0 = s & ~size_t(2), s1 = s | size_t(2);
            CHECK(dst[q * n + s] == src[q * n + s0] + src[q * n + s1]);
        }
}
