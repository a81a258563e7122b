#include <doctest.h>

#include <cmath>
#include <complex>

#include "fgmc/brute_force.hpp"
#include "fgmc/errors.hpp"
#include "fgmc/rng.hpp"
#include "fgmc/transfer.hpp"

using namespace fgmc;

namespace {

void check_equiv(const PartitionSummary& a, const PartitionSummary& b) {
    for (int q = 0; q < 4; ++q) {
        CHECK(a.bins[q].count == b.bins[q].count);
        if (a.bins[q].sum_mag == 0.0)
            CHECK(b.bins[q].sum_mag == 0.0);
        else
            CHECK(b.bins[q].sum_mag ==
                  doctest::Approx(a.bins[q].sum_mag).epsilon(1e-9));
    }
    CHECK(a.zero_count == b.zero_count);
}

PairwiseKernel random_quarter_kernel(PhiloxRng& rng, bool allow_zero = false) {
    PairwiseKernel k;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            double mag = 0.25 + 2.0 * rng.next_double();
            if (allow_zero && rng.next_double() < 0.25) mag = 0.0;
            k.entries[a][b] = ComplexValue::quarter(mag, int(rng.next_bits(2)));
        }
    return k;
}

}  // namespace

TEST_CASE("transfer equals brute force on preset kernels") {
    for (const char* preset : {"pm(1)", "pm(-2.5)", "neg13", "cplx15i", "pm(i)"}) {
        for (auto [m, mp] : {std::pair{2, 2}, {3, 3}, {4, 4}, {2, 3}, {3, 2}, {3, 4}, {1, 5}, {5, 1}, {1, 1}}) {
            GridModel g(m, mp, PairwiseKernel::preset(preset));
            check_equiv(brute_force_summary(g), transfer_matrix_summary(g));
        }
    }
}

TEST_CASE("transfer equals brute force on random (asymmetric) quarter kernels") {
    PhiloxRng rng(2024, 0);
    for (int t = 0; t < 12; ++t) {
        GridModel g(3, 4, random_quarter_kernel(rng, t >= 8));
        check_equiv(brute_force_summary(g), transfer_matrix_summary(g));
    }
}

TEST_CASE("1x1 grid: empty product") {
    GridModel g(1, 1, PairwiseKernel::preset("neg13"));
    auto s = transfer_matrix_summary(g);
    CHECK(s.bins[0].sum_mag == 2.0);
    CHECK(s.bins[0].count == 2);
    CHECK(s.total_count() == 2);
}

TEST_CASE("pm(1) 12x12: exact giant counts and cancellation") {
    GridModel g(12, 12, PairwiseKernel::preset("pm(1)"));
    auto s = transfer_matrix_summary(g);
    mpz_class half = mpz_class(1) << 143;
    CHECK(s.bins[0].count == half);
    CHECK(s.bins[2].count == half);
    CHECK(std::abs(s.z_f().real()) <= 1e-9 * s.z_abs());
    CHECK(s.bins[0].sum_mag == doctest::Approx(s.z_abs() / 2).epsilon(1e-9));
    CHECK(s.bins[0].log2_mag == doctest::Approx(143.0).epsilon(1e-12));
}

TEST_CASE("6x6 exact targets used by the experiment recipes") {
    GridModel g6(6, 6, PairwiseKernel::preset("neg13"));
    auto s = transfer_matrix_summary(g6, {14, true, false});
    CHECK(s.bins[0].log2_mag / 36.0 == doctest::Approx(1.1800440252021422).epsilon(1e-9));

    GridModel c6(6, 6, PairwiseKernel::preset("cplx15i"));
    auto sc = transfer_matrix_summary(c6, {14, true, false});
    CHECK(sc.bins[0].log2_mag / 36.0 == doctest::Approx(1.3194614767711448).epsilon(1e-9));
}

TEST_CASE("transposed execution matches the wide orientation") {
    PhiloxRng rng(99, 0);
    auto k = random_quarter_kernel(rng);
    GridModel wide(2, 5, k);
    TransferOptions narrow_only{4, true, true};   // forces the transposed run
    TransferOptions no_transpose{5, false, true};
    auto a = transfer_matrix_summary(wide, narrow_only);
    auto b = transfer_matrix_summary(wide, no_transpose);
    check_equiv(b, a);
    check_equiv(brute_force_summary(wide), a);
    CHECK(a.rows == 2);
    CHECK(a.cols == 5);
}

TEST_CASE("deep grids renormalize instead of overflowing") {
    // pm(4): |f| = 4^E for every assignment, so Z_|f| = 2^(N + 2E) exactly
    GridModel g(200, 4, PairwiseKernel::preset("pm(4)"));
    auto s = transfer_matrix_summary(g, {14, true, false});
    const double n = 800, e = 200 * 3 + 4 * 199;
    CHECK(s.log2_z_abs() == doctest::Approx(n + 2 * e).epsilon(1e-12));
    CHECK(std::isinf(s.bins[0].sum_mag));  // linear value is out of double range
    CHECK(s.bins[0].log2_mag == doctest::Approx(n - 1 + 2 * e).epsilon(1e-12));
}

TEST_CASE("tiny magnitudes renormalize too") {
    GridModel g(150, 3, PairwiseKernel::preset("pm(0.125)"));
    auto s = transfer_matrix_summary(g, {14, true, false});
    const double n = 450, e = 150 * 2 + 3 * 149;
    CHECK(s.log2_z_abs() == doctest::Approx(n - 3 * e).epsilon(1e-12));
}

TEST_CASE("scaling the kernel scales sums and fixes counts") {
    GridModel base(3, 3, PairwiseKernel::preset("neg13"));
    GridModel scaled(3, 3, PairwiseKernel::preset("neg13").scaled(3.0));
    auto a = transfer_matrix_summary(base);
    auto b = transfer_matrix_summary(scaled);
    double factor = std::pow(3.0, 12);
    for (int q = 0; q < 4; ++q) {
        CHECK(a.bins[q].count == b.bins[q].count);
        if (a.bins[q].sum_mag > 0.0)
            CHECK(b.bins[q].sum_mag ==
                  doctest::Approx(a.bins[q].sum_mag * factor).epsilon(1e-9));
    }
}

TEST_CASE("zero-entry kernels route hits to the zero bin exactly") {
    auto k = PairwiseKernel::preset("pm(1)");
    k.entries[0][0] = ComplexValue();
    GridModel g(3, 3, k);
    check_equiv(brute_force_summary(g), transfer_matrix_summary(g));
}

TEST_CASE("unsupported kernels and caps") {
    GridModel general(3, 3, PairwiseKernel::preset("pm(1+2i)"));
    CHECK_THROWS_AS(transfer_matrix_summary(general), UnsupportedKernelError);

    GridModel wide(20, 20, PairwiseKernel::preset("pm(1)"));
    CHECK_THROWS_AS(transfer_matrix_summary(wide), ResourceCapError);
}

TEST_CASE("neg13 shares the pm(1) sign structure: half-half counts for m >= 3") {
    for (int m : {3, 4, 5}) {
        GridModel g(m, m, PairwiseKernel::preset("neg13"));
        auto s = transfer_matrix_summary(g);
        mpz_class half = mpz_class(1) << (m * m - 1);
        CHECK(s.bins[0].count == half);
        CHECK(s.bins[2].count == half);
    }
}

TEST_CASE("pm(a) grids cancel for any nonzero a, real or imaginary") {
    for (const char* spec : {"pm(1)", "pm(-1)", "pm(2.5)", "pm(i)"}) {
        for (int m : {3, 4}) {
            GridModel g(m, m, PairwiseKernel::preset(spec));
            auto s = transfer_matrix_summary(g);
            CHECK(std::abs(s.z_f()) <= 1e-9 * s.z_abs());
        }
    }
}

TEST_CASE("pm(a) corollaries: Z+ = -Z- = Z_|f|/2; unit |a| also counts states") {
    for (const char* spec : {"pm(-1)", "pm(2.5)"}) {
        GridModel g(3, 3, PairwiseKernel::preset(spec));
        auto s = transfer_matrix_summary(g);
        CHECK(s.bins[0].sum_mag == doctest::Approx(s.z_abs() / 2).epsilon(1e-9));
        CHECK(s.bins[2].sum_mag == doctest::Approx(s.z_abs() / 2).epsilon(1e-9));
    }
    GridModel g1(3, 3, PairwiseKernel::preset("pm(-1)"));
    auto s1 = transfer_matrix_summary(g1);
    CHECK(s1.bins[0].sum_mag == 256.0);  // Z+ = |X+| when |f| = 1
    CHECK(s1.bins[0].count == 256);
    CHECK(s1.bins[2].count == 256);
}

TEST_CASE("extreme kernel magnitudes renormalize within a row") {
    // per-edge weight 2^40: one 10-column row alone would grow 2^800
    GridModel g(40, 10, PairwiseKernel::preset("pm(1099511627776)"));
    auto s = transfer_matrix_summary(g, {14, true, false});
    const double n = 400, e = 40 * 9 + 10 * 39;
    CHECK(s.log2_z_abs() == doctest::Approx(n + 40.0 * e).epsilon(1e-12));
}
