#include <doctest.h>

#include <cmath>

#include "fgmc/brute_force.hpp"
#include "fgmc/errors.hpp"
#include "fgmc/rng.hpp"

using namespace fgmc;

TEST_CASE("pm(1) 2x2: every assignment is positive") {
    GridModel g(2, 2, PairwiseKernel::preset("pm(1)"));
    auto s = brute_force_summary(g);
    CHECK(s.z_f().real() == 16.0);
    CHECK(s.z_f().imag() == 0.0);
    CHECK(s.bins[0].count == 16);
    CHECK(s.bins[2].count == 0);
    CHECK(s.zero_count == 0);
    CHECK(s.bins[2].sum_mag == 0.0);
}

TEST_CASE("pm(1) 3x3: exact cancellation and half-half counts") {
    GridModel g(3, 3, PairwiseKernel::preset("pm(1)"));
    auto s = brute_force_summary(g);
    CHECK(s.bins[0].count == 256);
    CHECK(s.bins[2].count == 256);
    CHECK(s.bins[0].sum_mag == 256.0);  // Z+ equals the count when |f| = 1
    CHECK(std::abs(s.z_f().real()) <= 1e-9 * s.z_abs());
    CHECK(s.z_f().imag() == 0.0);
    CHECK(s.z_abs() == 512.0);
}

TEST_CASE("neg13 3x3: frozen enumeration constants") {
    // values fixed by independent enumeration of all 512 assignments
    GridModel g(3, 3, PairwiseKernel::preset("neg13"));
    auto s = brute_force_summary(g);
    CHECK(s.bins[0].sum_mag == doctest::Approx(690.6960143320824).epsilon(1e-12));
    CHECK(s.bins[2].sum_mag == doctest::Approx(684.1834555720009).epsilon(1e-12));
    CHECK(s.z_abs() == doctest::Approx(1374.8794699040832).epsilon(1e-12));
    CHECK(s.z_f().real() == doctest::Approx(6.512558760081029).epsilon(1e-9));
    CHECK(s.bins[0].count == 256);
    CHECK(s.bins[2].count == 256);
    CHECK(s.bins[1].count == 0);
    CHECK(s.bins[3].count == 0);
}

TEST_CASE("cplx15i 3x3: four nonempty bins, frozen constants") {
    GridModel g(3, 3, PairwiseKernel::preset("cplx15i"));
    auto s = brute_force_summary(g);
    CHECK(s.bins[0].count == 144);
    CHECK(s.bins[1].count == 128);
    CHECK(s.bins[2].count == 144);
    CHECK(s.bins[3].count == 96);
    CHECK(s.total_count() == 512);
    CHECK(s.bins[0].sum_mag == doctest::Approx(1267.801025390625).epsilon(1e-12));
    CHECK(s.bins[1].sum_mag == doctest::Approx(784.34375).epsilon(1e-12));
    CHECK(s.bins[2].sum_mag == doctest::Approx(558.53125).epsilon(1e-12));
    CHECK(s.bins[3].sum_mag == doctest::Approx(285.0).epsilon(1e-12));
    CHECK(s.z_f().real() == doctest::Approx(709.269775390625).epsilon(1e-12));
    CHECK(s.z_f().imag() == doctest::Approx(499.34375).epsilon(1e-12));
}

TEST_CASE("neg13 2x2: cycles keep every sign positive") {
    GridModel g(2, 2, PairwiseKernel::preset("neg13"));
    auto s = brute_force_summary(g);
    CHECK(s.bins[0].count == 16);
    CHECK(s.bins[2].count == 0);
    CHECK(s.z_f().real() == doctest::Approx(21.8161).epsilon(1e-12));
}

TEST_CASE("zero kernel entries populate the zero bin") {
    auto k = PairwiseKernel::preset("pm(1)");
    k.entries[0][0] = ComplexValue();  // kill the all-equal category
    GridModel g(2, 2, k);
    auto s = brute_force_summary(g);
    // per-edge check: X0 = assignments with at least one (0,0) edge
    uint64_t expect_zero = 0;
    for (uint64_t idx = 0; idx < 16; ++idx) {
        Assignment x = Assignment::from_index(2, 2, idx);
        bool z = false;
        for (auto [a, b] : g.edges()) z |= (!x.bit(a) && !x.bit(b));
        expect_zero += z;
    }
    CHECK(s.zero_count == expect_zero);
    CHECK(s.total_count() == 16);
}

TEST_CASE("general complex kernel uses the off-axis bucket") {
    GridModel g(2, 2, PairwiseKernel::preset("pm(1+2i)"));
    auto s = brute_force_summary(g);
    CHECK(s.total_count() == 16);
    // direct complex enumeration oracle
    std::complex<double> z{0.0, 0.0};
    for (uint64_t idx = 0; idx < 16; ++idx) {
        Assignment x = Assignment::from_index(2, 2, idx);
        std::complex<double> v{1.0, 0.0};
        for (auto [a, b] : g.edges()) v *= g.kernel().at(x.bit(a), x.bit(b)).to_complex();
        z += v;
    }
    CHECK(s.z_f().real() == doctest::Approx(z.real()).epsilon(1e-9));
    CHECK(s.z_f().imag() == doctest::Approx(z.imag()).epsilon(1e-9));
}

TEST_CASE("summary identities hold for every output") {
    for (const char* preset : {"neg13", "cplx15i", "pm(-2.5)", "pm(i)"}) {
        GridModel g(3, 4, PairwiseKernel::preset(preset));
        auto s = brute_force_summary(g);
        CHECK(s.total_count() == (mpz_class(1) << 12));
        double sum_bins = 0.0;
        for (auto& b : s.bins) {
            CHECK(b.sum_mag >= 0.0);
            sum_bins += b.sum_mag;
        }
        CHECK(s.z_abs() == doctest::Approx(sum_bins + s.other_abs_sum));
        // real kernels: Z_f = Z+ + Z-, Z_|f| = Z+ - Z-
        if (g.kernel().all_real()) {
            CHECK(s.z_f().real() ==
                  doctest::Approx(s.bins[0].sum_mag - s.bins[2].sum_mag).epsilon(1e-12));
            CHECK(s.z_f().imag() == 0.0);
            CHECK(s.z_abs() ==
                  doctest::Approx(s.bins[0].sum_mag + s.bins[2].sum_mag).epsilon(1e-12));
        }
    }
}

TEST_CASE("brute force is independent of the thread count") {
    GridModel g(3, 4, PairwiseKernel::preset("cplx15i"));
    auto s1 = brute_force_summary(g, {24, 1});
    auto s2 = brute_force_summary(g, {24, 2});
    auto s4 = brute_force_summary(g, {24, 4});
    for (int q = 0; q < 4; ++q) {
        CHECK(s1.bins[q].sum_mag == s2.bins[q].sum_mag);  // bitwise
        CHECK(s1.bins[q].sum_mag == s4.bins[q].sum_mag);
        CHECK(s1.bins[q].count == s2.bins[q].count);
    }
}

TEST_CASE("enumeration cap raises a resource error") {
    GridModel g(5, 5, PairwiseKernel::preset("pm(1)"));
    CHECK_THROWS_AS(brute_force_summary(g), ResourceCapError);
    CHECK_NOTHROW(brute_force_summary(g, {25, 0}));  // override
}
