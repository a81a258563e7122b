#include "fgmc/transfer.hpp"

#include <cmath>
#include <vector>

#include "fgmc/errors.hpp"
#include "fgmc/simd/simd.hpp"
#include "fgmc/util.hpp"

namespace fgmc {

namespace {

simd::SiteStep make_step(const GridModel& m, int row, int col) {
    simd::SiteStep st;
    st.bit = col;
    st.has_left = col > 0;
    const bool has_up = row > 0;
    for (int l = 0; l < 2; ++l)
        for (int b = 0; b < 2; ++b)
            for (int x = 0; x < 2; ++x) {
                double w = 1.0;
                int dq = 0;
                if (has_up) {
                    w *= m.kernel().at(b, x).magnitude();
                    dq += m.entry_quarter(b, x);
                }
                if (st.has_left) {
                    w *= m.kernel().at(l, x).magnitude();
                    dq += m.entry_quarter(l, x);
                }
                st.w[l][b][x] = w;
                st.dq[l][b][x] = dq & 3;
            }
    return st;
}

void count_site_step(const std::vector<mpz_class>& src, std::vector<mpz_class>& dst,
                     size_t n, const simd::SiteStep& st) {
    // planes 0..3 = quarter phases, plane 4 = hit-a-zero-entry (absorbing)
    const size_t jmask = size_t(1) << st.bit;
    for (size_t s = 0; s < n; ++s) {
        const int x = int((s >> st.bit) & 1u);
        const int l = st.has_left ? int((s >> (st.bit - 1)) & 1u) : 0;
        const size_t sb[2] = {s & ~jmask, s | jmask};
        for (int q = 0; q < 5; ++q) dst[size_t(q) * n + s] = 0;
        mpz_class& z = dst[4 * n + s];
        for (int b = 0; b < 2; ++b) {
            if (st.w[l][b][x] == 0.0) {
                for (int q = 0; q < 5; ++q) z += src[size_t(q) * n + sb[b]];
            } else {
                const int d = st.dq[l][b][x];
                for (int q = 0; q < 4; ++q)
                    dst[size_t(q) * n + s] += src[size_t((q - d) & 3) * n + sb[b]];
                z += src[4 * n + sb[b]];
            }
        }
    }
}

PartitionSummary run(const GridModel& model, const TransferOptions& opts) {
    const int rows = model.rows(), cols = model.cols();
    const size_t n = size_t(1) << cols;

    std::vector<double> mag(4 * n, 0.0), mag_next(4 * n, 0.0);
    mag[0] = 1.0;  // empty frontier, phase 0
    long exponent = 0;

    std::vector<mpz_class> cnt, cnt_next;
    if (opts.with_counts) {
        cnt.assign(5 * n, mpz_class(0));
        cnt_next.assign(5 * n, mpz_class(0));
        cnt[0] = 1;
    }

    // keep magnitudes centered; scaling by a power of two is exact. A row of
    // sites can multiply states by at most 2^row_growth, so checking once per
    // row is enough unless the kernel is extreme.
    auto renormalize = [&] {
        double peak = simd::array_max(mag.data(), 4 * n);
        if (peak > 0.0) {
            int e = std::ilogb(peak);
            if (e > 400 || e < -400) {
                simd::array_scale(mag.data(), 4 * n, std::exp2(double(-e)));
                exponent += e;
            }
        }
    };
    double per_edge = 0.0;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            if (!model.entry_zero(a, b))
                per_edge = std::max(per_edge,
                                    std::abs(std::log2(model.kernel().at(a, b).magnitude())));
    const bool renorm_each_site = 2.0 * double(cols) * per_edge > 500.0;

    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            simd::SiteStep st = make_step(model, r, c);
            simd::site_step(mag.data(), mag_next.data(), n, st);
            mag.swap(mag_next);
            if (opts.with_counts) {
                count_site_step(cnt, cnt_next, n, st);
                cnt.swap(cnt_next);
            }
            if (renorm_each_site) renormalize();
        }
        if (!renorm_each_site) renormalize();
    }

    PartitionSummary s;
    s.method = "transfer";
    s.rows = rows;
    s.cols = cols;
    for (int q = 0; q < 4; ++q) {
        NeumaierSum acc;
        for (size_t i = 0; i < n; ++i) acc.add(mag[size_t(q) * n + i]);
        double v = acc.value();
        s.bins[q].log2_mag = v > 0.0 ? std::log2(v) + double(exponent)
                                     : -std::numeric_limits<double>::infinity();
        s.bins[q].sum_mag = std::ldexp(v, int(exponent));
        if (opts.with_counts) {
            mpz_class total = 0;
            for (size_t i = 0; i < n; ++i) total += cnt[size_t(q) * n + i];
            s.bins[q].count = total;
        }
    }
    if (opts.with_counts) {
        mpz_class z = 0;
        for (size_t i = 0; i < n; ++i) z += cnt[4 * n + i];
        s.zero_count = z;
    }
    return s;
}

}  // namespace

PartitionSummary transfer_matrix_summary(const GridModel& model, const TransferOptions& opts) {
    if (!model.kernel_all_quarter())
        throw UnsupportedKernelError(
            "transfer contraction needs a kernel with every entry on a quarter-turn axis; "
            "use brute force for general complex kernels");
    if (model.cols() <= opts.max_cols) return run(model, opts);
    if (opts.allow_transpose && model.rows() <= opts.max_cols) {
        // transposing the grid maps left->upper and right->lower, so the factor
        // multiset (and every bin) is unchanged
        GridModel t(model.cols(), model.rows(), model.kernel());
        PartitionSummary s = run(t, opts);
        s.rows = model.rows();
        s.cols = model.cols();
        return s;
    }
    throw ResourceCapError("transfer cap exceeded: both orientations wider than " +
                           std::to_string(opts.max_cols) + " columns");
}

}  // namespace fgmc
