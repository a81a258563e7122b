#include <benchmark/benchmark.h>

#include <vector>

#include "fgmc/eval.hpp"
#include "fgmc/rng.hpp"
#include "fgmc/sampler.hpp"
#include "fgmc/simd/simd.hpp"
#include "fgmc/transfer.hpp"

using namespace fgmc;

namespace {

simd::SiteStep mid_row_step(const GridModel& g, int col) {
    // representative interior site: both vertical and horizontal edges
    simd::SiteStep st;
    st.bit = col;
    st.has_left = col > 0;
    for (int l = 0; l < 2; ++l)
        for (int b = 0; b < 2; ++b)
            for (int x = 0; x < 2; ++x) {
                double w = g.kernel().at(b, x).magnitude();
                int dq = g.entry_quarter(b, x);
                if (st.has_left) {
                    w *= g.kernel().at(l, x).magnitude();
                    dq += g.entry_quarter(l, x);
                }
                st.w[l][b][x] = w;
                st.dq[l][b][x] = dq & 3;
            }
    return st;
}

template <void step(const double*, double*, size_t, const simd::SiteStep&)>
void bm_site_step(benchmark::State& state) {
    const int cols = int(state.range(0));
    const size_t n = size_t(1) << cols;
    GridModel g(4, cols, PairwiseKernel::preset("neg13"));
    auto st = mid_row_step(g, cols / 2);
    std::vector<double> src(4 * n, 1.0), dst(4 * n);
    PhiloxRng rng(1, 0);
    for (auto& v : src) v = rng.next_double() + 0.5;
    for (auto _ : state) {
        step(src.data(), dst.data(), n, st);
        benchmark::DoNotOptimize(dst.data());
        benchmark::ClobberMemory();
    }
    state.SetItemsProcessed(int64_t(state.iterations()) * int64_t(4 * n));
}

void bm_transfer(benchmark::State& state) {
    const int m = int(state.range(0));
    GridModel g(m, m, PairwiseKernel::preset("neg13"));
    for (auto _ : state) {
        auto s = transfer_matrix_summary(g, {14, true, false});
        benchmark::DoNotOptimize(s.bins[0].sum_mag);
    }
}

void bm_evaluate(benchmark::State& state) {
    const int m = int(state.range(0));
    GridModel g(m, m, PairwiseKernel::preset("cplx15i"));
    UniformSampler smp(g, {7, 0});
    for (auto _ : state) {
        auto s = smp.next();
        benchmark::DoNotOptimize(s.value);
    }
    state.SetItemsProcessed(int64_t(state.iterations()));
}

void bm_gibbs_sweep(benchmark::State& state) {
    const int m = int(state.range(0));
    GridModel g(m, m, PairwiseKernel::preset("neg13"));
    SamplerConfig cfg{11, 0, 0, 1, SamplerConfig::Scheme::row_blocked, 0};
    GibbsSampler gs(g, cfg);
    for (auto _ : state) {
        gs.sweep();
        benchmark::DoNotOptimize(gs.state().row_word(0));
    }
    state.SetItemsProcessed(int64_t(state.iterations()) * int64_t(m) * int64_t(m));
}

}  // namespace

BENCHMARK(bm_site_step<simd::site_step_scalar>)->Arg(10)->Arg(12)->Arg(14);
#ifdef FGMC_HAVE_AVX2
BENCHMARK(bm_site_step<simd::site_step_avx2>)->Arg(10)->Arg(12)->Arg(14);
#endif
BENCHMARK(bm_transfer)->Arg(10)->Arg(12)->Arg(14)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_evaluate)->Arg(6)->Arg(15);
BENCHMARK(bm_gibbs_sweep)->Arg(6)->Arg(10)->Arg(14);

BENCHMARK_MAIN();
