#include <doctest.h>

#include <cmath>

#include "fgmc/brute_force.hpp"
#include "fgmc/errors.hpp"
#include "fgmc/estimators.hpp"
#include "stats.hpp"

using namespace fgmc;
using namespace fgmc::test;

namespace {

PairwiseKernel constant_kernel(double c) {
    PairwiseKernel k;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) k.entries[a][b] = ComplexValue::real(c);
    return k;
}

PairwiseKernel all_positive() {
    PairwiseKernel k;
    k.entries[0][0] = ComplexValue::real(1.7);
    k.entries[0][1] = ComplexValue::real(0.4);
    k.entries[1][0] = ComplexValue::real(2.2);
    k.entries[1][1] = ComplexValue::real(0.9);
    return k;
}

}  // namespace

TEST_CASE("uniform_z on a constant f is exact at every prefix") {
    GridModel g(1, 2, constant_kernel(2.5));  // f = 2.5 everywhere, |X| = 4
    UniformZEstimator est(g, PhaseBin::exact(0), 2.0);
    UniformSampler smp(g, {3, 0});
    for (int k = 1; k <= 100; ++k) {
        est.add(smp.next());
        CHECK(est.estimate().real() == doctest::Approx(10.0).epsilon(1e-12));
        CHECK(est.estimate().imag() == 0.0);
    }
}

TEST_CASE("uniform_z rejects samples from the wrong bin") {
    GridModel g(3, 3, PairwiseKernel::preset("neg13"));
    UniformZEstimator est(g, PhaseBin::exact(0), 8.0);
    BinRejectionSampler minus(g, {5, 0}, PhaseBin::exact(2));
    CHECK_THROWS_AS(est.add(minus.next()), ContractViolationError);
}

TEST_CASE("uniform_z chain means hit the exact partial sums (3x3 neg13)") {
    GridModel g(3, 3, PairwiseKernel::preset("neg13"));
    auto exact = brute_force_summary(g);
    const int chains = 100, K = 500;
    for (int q : {0, 2}) {
        std::vector<double> finals;
        double lc = mpz_log2(exact.bins[size_t(q)].count);
        for (int c = 0; c < chains; ++c) {
            BinRejectionSampler smp(g, {101, uint64_t(c) * 8 + uint64_t(q)},
                                    PhaseBin::exact(q));
            UniformZEstimator est(g, PhaseBin::exact(q), lc);
            for (int k = 0; k < K; ++k) est.add(smp.next());
            finals.push_back(est.estimate().real());
        }
        double target = exact.bins[size_t(q)].z(q).real();
        double dev, se;
        bool ok = mean_within_3se(finals, target, &dev, &se);
        INFO("bin " << q << " dev=" << dev << " se=" << se);
        CHECK(ok);
    }
}

TEST_CASE("ogata-tanemura on a constant f inverts exactly") {
    GridModel g(1, 2, constant_kernel(2.5));
    OgataTanemuraEstimator est(g, PhaseBin::exact(0), 2.0);
    GibbsSampler smp(g, {7, 0, 20, 1, SamplerConfig::Scheme::single_site, 0});
    for (int k = 0; k < 64; ++k) est.add(smp.next());
    CHECK(est.gamma().real() == doctest::Approx(0.1).epsilon(1e-12));  // 1/(4*2.5)
    CHECK(est.z_estimate().real() == doctest::Approx(10.0).epsilon(1e-12));
}

TEST_CASE("ogata-tanemura gamma means hit 1/Z per bin (3x3 neg13)") {
    GridModel g(3, 3, PairwiseKernel::preset("neg13"));
    auto exact = brute_force_summary(g);
    const int chains = 100, K = 400;
    for (int q : {0, 2}) {
        std::vector<double> gammas;
        double lc = mpz_log2(exact.bins[size_t(q)].count);
        for (int c = 0; c < chains; ++c) {
            GibbsSampler gibbs(
                g, {103, uint64_t(c) * 8 + uint64_t(q), 50, 1,
                    SamplerConfig::Scheme::row_blocked, 0});
            BinFilteredSampler<GibbsSampler> smp(gibbs, PhaseBin::exact(q));
            OgataTanemuraEstimator est(g, PhaseBin::exact(q), lc);
            for (int k = 0; k < K; ++k) est.add(smp.next());
            gammas.push_back(est.gamma().real());
        }
        double target = 1.0 / exact.bins[size_t(q)].z(q).real();  // 1/Z- is negative
        double dev, se;
        bool ok = mean_within_3se(gammas, target, &dev, &se);
        INFO("bin " << q << " dev=" << dev << " se=" << se);
        CHECK(ok);
    }
}

TEST_CASE("count_uniform is exact for single-bin kernels and partitions every prefix") {
    GridModel g(2, 3, all_positive());
    CountUniformEstimator est(g);
    UniformSampler smp(g, {9, 0});
    for (int k = 1; k <= 300; ++k) {
        est.add(smp.next());
        CHECK(est.hits(0) + est.hits(1) + est.hits(2) + est.hits(3) + est.zero_hits() +
                  est.other_hits() ==
              uint64_t(k));
        CHECK(est.xi(0) == 64.0);  // every sample is positive: xi+ = 2^N exactly
        CHECK(est.hits(2) == 0);
    }
}

TEST_CASE("count_uniform means hit the true counts (3x3 pm(1))") {
    GridModel g(3, 3, PairwiseKernel::preset("pm(1)"));
    CountUniformEstimator est(g);
    UniformSampler smp(g, {13, 0});
    const int K = 100000;
    for (int k = 0; k < K; ++k) est.add(smp.next());
    CHECK(std::abs(est.xi(0) - 256.0) < 3.0 * 512.0 * std::sqrt(0.25 / K));
    CHECK(std::abs(est.xi(2) - 256.0) < 3.0 * 512.0 * std::sqrt(0.25 / K));
    CHECK(est.hits(1) == 0);
    CHECK(est.hits(3) == 0);
}

TEST_CASE("count_absgibbs: all-positive kernel solves exactly") {
    GridModel g(2, 3, all_positive());
    CountAbsGibbsEstimator est(g);
    GibbsSampler smp(g, {15, 0, 30, 1, SamplerConfig::Scheme::row_blocked, 0});
    for (int k = 0; k < 200; ++k) est.add(smp.next());
    CHECK(est.ratio() == 1.0);  // lambda == gamma pointwise
    CHECK(est.xplus() == 64.0);
    CHECK(est.xminus() == 0.0);
}

TEST_CASE("count_absgibbs: pm(1) at 2x2 has no negative assignments") {
    GridModel g(2, 2, PairwiseKernel::preset("pm(1)"));
    CountAbsGibbsEstimator est(g);
    GibbsSampler smp(g, {17, 0, 30, 1, SamplerConfig::Scheme::single_site, 0});
    for (int k = 0; k < 200; ++k) est.add(smp.next());
    CHECK(est.ratio() == 1.0);
    CHECK(est.xminus() == 0.0);
}

TEST_CASE("count_absgibbs chain means solve the sign counts (3x3 neg13)") {
    GridModel g(3, 3, PairwiseKernel::preset("neg13"));
    const int chains = 60, K = 1500;
    std::vector<double> xplus, lambdas, gammas;
    for (int c = 0; c < chains; ++c) {
        GibbsSampler smp(g, {107, uint64_t(c) * 8 + 4, 50, 1,
                             SamplerConfig::Scheme::row_blocked, 0});
        CountAbsGibbsEstimator est(g);
        for (int k = 0; k < K; ++k) est.add(smp.next());
        xplus.push_back(est.xplus());
        lambdas.push_back(est.lambda());
        gammas.push_back(est.gamma());
    }
    auto exact = brute_force_summary(g);
    // E[lambda] = (|X+|-|X-|)/Z_|f| = 0 here; E[gamma] = |X|/Z_|f|
    double dev, se;
    CHECK(mean_within_3se(lambdas, 0.0, &dev, &se));
    CHECK(mean_within_3se(gammas, 512.0 / exact.z_abs(), &dev, &se));
    // the solved count is a smooth function of the ratio; allow its own 3 SE
    CHECK(mean_within_3se(xplus, 256.0, &dev, &se));
}

TEST_CASE("count_absgibbs refuses complex kernels and zero entries") {
    GridModel complex_model(2, 2, PairwiseKernel::preset("cplx15i"));
    CHECK_THROWS_AS(CountAbsGibbsEstimator{complex_model}, UnsupportedEstimatorError);
    auto k = PairwiseKernel::preset("pm(1)");
    k.entries[0][1] = ComplexValue();
    GridModel zero_model(2, 2, k);
    CHECK_THROWS_AS(CountAbsGibbsEstimator{zero_model}, PreconditionError);
}

TEST_CASE("clamping keeps solved counts inside [0, 2^N]") {
    // a tiny K can push the raw ratio outside [-1, 1]; feed synthetic samples
    GridModel g(2, 2, PairwiseKernel::preset("neg13"));
    CountAbsGibbsEstimator est(g);
    Assignment x(2, 2);
    // f(0) = 1.3^4 > 0: a single positive sample gives ratio exactly 1
    est.add({x, evaluate_f(g, x), classify_phase(evaluate_f(g, x))});
    CHECK(est.ratio() == 1.0);
    CHECK(est.xminus() == 0.0);
    CHECK(est.xplus() == 16.0);
}

TEST_CASE("assemble_zf: exact bins reproduce Z_f and flag cancellation") {
    GridModel g(3, 3, PairwiseKernel::preset("pm(1)"));
    auto s = brute_force_summary(g);
    std::array<std::optional<BinEstimate>, 4> est;
    std::array<bool, 4> nonempty{};
    for (int q = 0; q < 4; ++q) {
        nonempty[size_t(q)] = s.bins[size_t(q)].count > 0;
        if (nonempty[size_t(q)]) est[size_t(q)] = BinEstimate{s.bins[size_t(q)].z(q), 0.0};
    }
    auto zf = assemble_zf(est, nonempty);
    CHECK(zf.z_f.real() == doctest::Approx(0.0).scale(1.0));
    CHECK(zf.cancellation);  // Z+ and Z- cancel exactly

    GridModel g13(3, 3, PairwiseKernel::preset("neg13"));
    auto s13 = brute_force_summary(g13);
    std::array<std::optional<BinEstimate>, 4> est13;
    std::array<bool, 4> ne13{};
    for (int q = 0; q < 4; ++q) {
        ne13[size_t(q)] = s13.bins[size_t(q)].count > 0;
        if (ne13[size_t(q)])
            est13[size_t(q)] = BinEstimate{s13.bins[size_t(q)].z(q), 0.5};
    }
    auto zf13 = assemble_zf(est13, ne13);
    CHECK(zf13.z_f.real() == doctest::Approx(s13.z_f().real()).epsilon(1e-12));
    CHECK(zf13.cancellation);  // 6.5 of 1374: below the 1% threshold
    CHECK(zf13.stderr_linear == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));

    // missing nonempty bin
    est13[0].reset();
    CHECK_THROWS_AS(assemble_zf(est13, ne13), IncompleteInputError);

    // well-separated case: no flag
    std::array<std::optional<BinEstimate>, 4> single{};
    single[0] = BinEstimate{{100.0, 0.0}, 1.0};
    auto zs = assemble_zf(single, {true, false, false, false});
    CHECK(!zs.cancellation);
}

TEST_CASE("assemble_zf with MC bins lands within 3 combined errors (3x3 neg13)") {
    GridModel g(3, 3, PairwiseKernel::preset("neg13"));
    auto exact = brute_force_summary(g);
    const int chains = 10, K = 4000;
    std::array<std::optional<BinEstimate>, 4> est{};
    std::array<bool, 4> nonempty{false, false, false, false};
    for (int q : {0, 2}) {
        nonempty[size_t(q)] = true;
        std::vector<double> finals;
        for (int c = 0; c < chains; ++c) {
            BinRejectionSampler smp(g, {109, uint64_t(c) * 8 + uint64_t(q)},
                                    PhaseBin::exact(q));
            UniformZEstimator e(g, PhaseBin::exact(q),
                                mpz_log2(exact.bins[size_t(q)].count));
            for (int k = 0; k < K; ++k) e.add(smp.next());
            finals.push_back(e.estimate().real());
        }
        est[size_t(q)] = BinEstimate{{mean(finals), 0.0}, stderr_of_mean(finals)};
    }
    auto zf = assemble_zf(est, nonempty);
    CHECK(std::abs(zf.z_f.real() - exact.z_f().real()) <= 3.0 * zf.stderr_linear);
}

TEST_CASE("running traces funnel: late spread is smaller than early spread") {
    GridModel g(3, 3, PairwiseKernel::preset("neg13"));
    auto exact = brute_force_summary(g);
    const int chains = 10;
    const uint64_t K = 2000;
    std::vector<EstimatorTrace> traces;
    for (int c = 0; c < chains; ++c) {
        BinRejectionSampler smp(g, {111, uint64_t(c) * 8}, PhaseBin::exact(0));
        traces.push_back(run_uniform_z_chain(g, PhaseBin::exact(0),
                                             mpz_log2(exact.bins[0].count), smp, K, 200,
                                             uint64_t(c)));
    }
    const size_t npts = traces[0].running.size();
    for (auto& tr : traces) REQUIRE(tr.running.size() == npts);
    auto spread_at = [&](size_t i) {
        std::vector<double> vals;
        for (auto& tr : traces) vals.push_back(tr.running[i].value.real());
        return sample_std(vals);
    };
    double early = 0.0, late = 0.0;
    const size_t dec = npts / 10;
    for (size_t i = 0; i < dec; ++i) early += spread_at(i);
    for (size_t i = npts - dec; i < npts; ++i) late += spread_at(i);
    CHECK(late < early);
}

TEST_CASE("trace bookkeeping: ascending k, final is last, stride caps length") {
    GridModel g(2, 2, PairwiseKernel::preset("neg13"));
    BinRejectionSampler smp(g, {113, 0}, PhaseBin::exact(0));
    auto tr = run_uniform_z_chain(g, PhaseBin::exact(0), 4.0, smp, 1000, 100, 3);
    CHECK(tr.chain_id == 3);
    CHECK(tr.running.size() <= 101);
    for (size_t i = 1; i < tr.running.size(); ++i)
        CHECK(tr.running[i].k > tr.running[i - 1].k);
    CHECK(tr.final().k == 1000);
}
