#include "fgmc/brute_force.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

#include "fgmc/errors.hpp"
#include "fgmc/eval.hpp"
#include "fgmc/util.hpp"

namespace fgmc {

namespace {

struct ChunkAccum {
    NeumaierSum mag[4];
    uint64_t count[4] = {0, 0, 0, 0};
    uint64_t zero = 0;
    NeumaierSum other_re, other_im, other_abs;
    uint64_t other = 0;
};

}  // namespace

PartitionSummary brute_force_summary(const GridModel& model, const BruteForceOptions& opts) {
    const int n = model.num_vars();
    if (n > opts.max_vars)
        throw ResourceCapError("brute force cap exceeded: N = " + std::to_string(n) +
                               " > " + std::to_string(opts.max_vars) +
                               " (raise the cap to override)");
    if (n > 62)
        throw ResourceCapError("brute force enumerates through a 64-bit index; N = " +
                               std::to_string(n) + " > 62");

    const uint64_t total = uint64_t(1) << n;
    const int nchunks = int(std::min<uint64_t>(64, total));
    auto acc = std::vector<ChunkAccum>(size_t(nchunks));

    auto work = [&](int chunk) {
        ChunkAccum& a = acc[size_t(chunk)];
        uint64_t lo = total * uint64_t(chunk) / uint64_t(nchunks);
        uint64_t hi = total * uint64_t(chunk + 1) / uint64_t(nchunks);
        Assignment x(model.rows(), model.cols());
        const bool quarter = model.kernel_all_quarter();
        for (uint64_t idx = lo; idx < hi; ++idx) {
            for (int r = 0; r < model.rows(); ++r)
                x.set_row_word(r, idx >> (r * model.cols()));
            if (quarter) {
                ComplexValue v = evaluate_f(model, x);
                if (v.is_zero()) {
                    ++a.zero;
                } else {
                    int q = v.quarter_index();
                    a.mag[q].add(v.magnitude());
                    ++a.count[q];
                }
            } else {
                ComplexValue v = evaluate_f(model, x);
                PhaseBin b = classify_phase(v);
                if (b.is_zero()) {
                    ++a.zero;
                } else if (b.is_exact()) {
                    a.mag[b.quarter].add(v.magnitude());
                    ++a.count[b.quarter];
                } else {
                    a.other_re.add(v.re());
                    a.other_im.add(v.im());
                    a.other_abs.add(v.magnitude());
                    ++a.other;
                }
            }
        }
    };

    int nthreads = opts.threads > 0 ? opts.threads
                                    : std::max(1u, std::thread::hardware_concurrency());
    nthreads = std::min(nthreads, nchunks);
    if (nthreads <= 1) {
        for (int c = 0; c < nchunks; ++c) work(c);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        pool.reserve(size_t(nthreads));
        for (int t = 0; t < nthreads; ++t)
            pool.emplace_back([&] {
                for (int c = next.fetch_add(1); c < nchunks; c = next.fetch_add(1)) work(c);
            });
        for (auto& th : pool) th.join();
    }

    // ordered merge keeps the result independent of the thread count
    PartitionSummary s;
    s.method = "brute";
    s.rows = model.rows();
    s.cols = model.cols();
    NeumaierSum mag[4], ore, oim, oabs;
    for (int c = 0; c < nchunks; ++c) {
        for (int q = 0; q < 4; ++q) {
            mag[q].add(acc[size_t(c)].mag[q].value());
            s.bins[q].count += acc[size_t(c)].count[q];
        }
        s.zero_count += acc[size_t(c)].zero;
        s.other_count += acc[size_t(c)].other;
        ore.add(acc[size_t(c)].other_re.value());
        oim.add(acc[size_t(c)].other_im.value());
        oabs.add(acc[size_t(c)].other_abs.value());
    }
    for (int q = 0; q < 4; ++q) {
        s.bins[q].sum_mag = mag[q].value();
        s.bins[q].log2_mag = log2_or_neg_inf(s.bins[q].sum_mag);
    }
    s.other_sum = {ore.value(), oim.value()};
    s.other_abs_sum = oabs.value();
    return s;
}

}  // namespace fgmc
