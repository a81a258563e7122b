// fgmc: partition functions of grid factor graphs with signed/complex
// pairwise factors. Subcommands: exact, estimate, dual-check, presets.
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "fgmc/brute_force.hpp"
#include "fgmc/dual.hpp"
#include "fgmc/errors.hpp"
#include "fgmc/estimators.hpp"
#include "fgmc/io.hpp"
#include "fgmc/sampler.hpp"
#include "fgmc/simd/simd.hpp"
#include "fgmc/transfer.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace fgmc;

namespace {

// ---- shared option plumbing -------------------------------------------------

struct ModelArgs {
    std::string preset;
    std::string kernel_file;
    int size = 0, rows = 0, cols = 0;
};

struct CommonArgs {
    std::string out_dir = ".";
    uint64_t seed = 0;
};

void add_model_options(CLI::App* cmd, ModelArgs& m) {
    cmd->add_option("--preset", m.preset, "kernel preset: neg13, cplx15i, pm(<a>)");
    cmd->add_option("--kernel", m.kernel_file, "kernel JSON file");
    cmd->add_option("--size", m.size, "square grid side m (rows = cols = m)");
    cmd->add_option("--rows", m.rows, "grid rows");
    cmd->add_option("--cols", m.cols, "grid cols");
}

GridModel build_model(const ModelArgs& m) {
    if (m.preset.empty() == m.kernel_file.empty())
        throw ConfigError("give exactly one of --preset or --kernel");
    PairwiseKernel k = m.preset.empty() ? PairwiseKernel::load_file(m.kernel_file)
                                        : PairwiseKernel::preset(m.preset);
    int rows = m.rows, cols = m.cols;
    if (m.size > 0) {
        if (rows > 0 || cols > 0) throw ConfigError("--size conflicts with --rows/--cols");
        rows = cols = m.size;
    }
    if (rows <= 0 || cols <= 0) throw ConfigError("grid size missing: --size or --rows/--cols");
    return GridModel(rows, cols, std::move(k));
}

uint64_t parse_count(const std::string& s) {
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0' || !(v >= 1.0) || v != std::floor(v) || v > 1e18)
        throw ConfigError("bad count literal: " + s);
    return uint64_t(v);
}

uint64_t env_seed_default() {
    if (const char* e = std::getenv("FGMC_SEED")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(e, &end, 10);
        if (end != e && *end == '\0') return v;
    }
    return 0;
}

// Config-file merge with "flags > config file > defaults": values from the
// JSON file are written into the bound variables before CLI11 parses argv,
// so options present on the command line simply overwrite them.
json load_config(int argc, char** argv) {
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string_view(argv[i]) == "--config") {
            std::ifstream in(argv[i + 1]);
            if (!in) throw ConfigError(std::string("cannot open config file: ") + argv[i + 1]);
            json j;
            try {
                in >> j;
            } catch (const json::exception& e) {
                throw ConfigError(std::string("config file: ") + e.what());
            }
            return j;
        }
    return json::object();
}

template <class T>
void cfg_get(const json& j, const char* key, T& out) {
    if (j.contains(key)) out = j[key].get<T>();
}

void cfg_get_count(const json& j, const char* key, std::string& out) {
    if (!j.contains(key)) return;
    if (j[key].is_string())
        out = j[key].get<std::string>();
    else
        out = std::to_string(j[key].get<uint64_t>());
}

std::ofstream open_out(const fs::path& dir, const std::string& name) {
    fs::create_directories(dir);
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + (dir / name).string());
    return out;
}

// fixed-shape worker pool; job results must be stored by index so output
// order never depends on the pool size
void run_pool(int workers, int jobs, const std::function<void(int)>& job) {
    if (workers <= 0) workers = int(std::max(1u, std::thread::hardware_concurrency()));
    workers = std::min(workers, jobs);
    if (workers <= 1) {
        for (int i = 0; i < jobs; ++i) job(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr first_error;
    std::mutex err_mu;
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < jobs; i = next.fetch_add(1)) {
                try {
                    job(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lk(err_mu);
                    if (!first_error) first_error = std::current_exception();
                }
            }
        });
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

json model_json(const GridModel& g) {
    return {{"rows", g.rows()}, {"cols", g.cols()}, {"kernel", g.kernel().to_json()}};
}

void print_summary_table(const PartitionSummary& s, int nvars) {
    std::printf("%-8s %-22s %-14s %s\n", "bin", "count", "log2|Z_b|", "(1/N)log2|Z_b|");
    for (int q = 0; q < 4; ++q) {
        std::printf("%-8s %-22s %-14.6f %.6f\n", quarter_bin_name(q),
                    mpz_to_decimal(s.bins[q].count).c_str(), s.bins[q].log2_mag,
                    s.bins[q].log2_mag / nvars);
    }
    if (s.zero_count != 0)
        std::printf("%-8s %s\n", "zero", mpz_to_decimal(s.zero_count).c_str());
    std::printf("Z_f = %s + %s i   log2 Z_|f| = %.6f\n", format_double(s.z_f().real()).c_str(),
                format_double(s.z_f().imag()).c_str(), s.log2_z_abs());
}

// ---- estimate ----------------------------------------------------------------

// substream layout: chain c, slot s -> stream id c*8 + s
//   slot q in 0..3   bin-targeted samplers for quarter bin q
//   slot 4           whole-space samplers (count_uniform / count_absgibbs)
//   slot 5           the count_uniform pre-stage that estimates |X_bin|
constexpr uint64_t kSlotWhole = 4;
constexpr uint64_t kSlotPrestage = 5;

uint64_t stream_id(uint64_t chain, uint64_t slot) { return chain * 8 + slot; }

struct EstimateArgs {
    ModelArgs model;
    std::string estimator = "uniform_z";
    std::string bin = "plus";
    std::string K_str;
    int chains = 10;
    int workers = 0;
    int trace_points = 1000;
    int burn_in = 100;
    int thinning = 1;
    std::string scheme = "row-blocked";
    std::string bin_count;       // decimal |X_bin|
    double bin_count_log2 = std::numeric_limits<double>::quiet_NaN();
    int max_cols = 14;
    bool svg = false;
    bool dump = false;
    uint64_t rejection_budget = 10'000'000;
};

struct BinAggregate {
    std::vector<double> finals_log2;
    double mean_log2 = -std::numeric_limits<double>::infinity();
    double stderr_rel = 0.0;
};

BinAggregate aggregate_log2(const std::vector<double>& finals) {
    BinAggregate a;
    a.finals_log2 = finals;
    double lmax = -std::numeric_limits<double>::infinity();
    for (double l : finals)
        if (std::isfinite(l)) lmax = std::max(lmax, l);
    if (!std::isfinite(lmax)) return a;
    std::vector<double> lin;
    lin.reserve(finals.size());
    for (double l : finals) lin.push_back(std::exp2(l - lmax));
    double mean = 0.0;
    for (double v : lin) mean += v;
    mean /= double(lin.size());
    double ss = 0.0;
    for (double v : lin) ss += (v - mean) * (v - mean);
    double se = lin.size() > 1 ? std::sqrt(ss / double(lin.size() - 1)) /
                                     std::sqrt(double(lin.size()))
                               : 0.0;
    a.mean_log2 = std::log2(mean) + lmax;
    a.stderr_rel = mean > 0.0 ? se / mean : 0.0;
    return a;
}

struct BinCountInfo {
    double log2 = std::numeric_limits<double>::quiet_NaN();
    std::string source;  // "given" | "exact" | "estimated"
    bool nonempty = true;
};

SamplerConfig::Scheme parse_scheme(const std::string& s) {
    if (s == "row-blocked") return SamplerConfig::Scheme::row_blocked;
    if (s == "single-site") return SamplerConfig::Scheme::single_site;
    throw ConfigError("unknown scheme: " + s + " (row-blocked | single-site)");
}

int cmd_estimate(const EstimateArgs& a, const CommonArgs& common) {
    GridModel model = build_model(a.model);
    const int nvars = model.num_vars();
    auto est_id = parse_estimator(a.estimator);
    if (!est_id) throw ConfigError("unknown estimator: " + a.estimator);
    if (a.K_str.empty()) throw ConfigError("--K is required");
    const uint64_t K = parse_count(a.K_str);
    if (a.chains < 1) throw ConfigError("--chains must be >= 1");
    SamplerConfig::Scheme scheme = parse_scheme(a.scheme);

    // incompatibilities surface before any sampling
    const bool needs_gibbs = *est_id == EstimatorId::ogata_tanemura ||
                             *est_id == EstimatorId::count_absgibbs;
    if (needs_gibbs && model.kernel().has_zero_entry())
        throw ConfigError("estimator " + a.estimator +
                          " samples from |f| and needs a kernel with no zero entries");
    if (*est_id == EstimatorId::count_absgibbs && !model.kernel().all_real())
        throw ConfigError(
            "count_absgibbs resolves the two sign bins only and does not apply to "
            "complex kernels; use count_uniform");

    // bins to run for the Z estimators
    std::vector<int> target_bins;
    bool all_bins = false;
    if (*est_id == EstimatorId::uniform_z || *est_id == EstimatorId::ogata_tanemura) {
        if (a.bin == "all") {
            all_bins = true;
        } else {
            auto b = PhaseBin::parse(a.bin);
            if (!b || !b->is_exact())
                throw ConfigError("--bin must be plus, plus_i, minus, minus_i or all");
            target_bins.push_back(b->quarter);
        }
    }

    // exact reference (also the default source of |X_bin|)
    std::optional<PartitionSummary> exact;
    const bool transfer_fits =
        model.kernel_all_quarter() &&
        std::min(model.rows(), model.cols()) <= a.max_cols;
    if (transfer_fits)
        exact = transfer_matrix_summary(model, {a.max_cols, true, true});

    // |X_bin| per quarter bin where needed
    std::array<BinCountInfo, 4> counts;
    json prestage_json;
    const bool needs_counts =
        *est_id == EstimatorId::uniform_z || *est_id == EstimatorId::ogata_tanemura;
    if (needs_counts) {
        if (!a.bin_count.empty() || std::isfinite(a.bin_count_log2)) {
            if (all_bins)
                throw ConfigError("--bin-count applies to a single --bin, not --bin all");
            BinCountInfo info;
            info.source = "given";
            info.log2 = !a.bin_count.empty() ? mpz_log2(mpz_class(a.bin_count))
                                             : a.bin_count_log2;
            counts[size_t(target_bins[0])] = info;
        } else if (exact) {
            for (int q = 0; q < 4; ++q) {
                counts[size_t(q)].log2 = mpz_log2(exact->bins[size_t(q)].count);
                counts[size_t(q)].source = "exact";
                counts[size_t(q)].nonempty = exact->bins[size_t(q)].count > 0;
            }
        } else {
            // pre-stage: estimate |X_bin| by uniform counting with the same K
            std::vector<CountUniformResult> pre(size_t(a.chains));
            run_pool(a.workers, a.chains, [&](int c) {
                SamplerConfig scfg{common.seed, stream_id(uint64_t(c), kSlotPrestage),
                                   a.burn_in, a.thinning, scheme, a.rejection_budget};
                UniformSampler smp(model, scfg);
                pre[size_t(c)] =
                    run_count_uniform_chain(model, smp, K, a.trace_points, uint64_t(c));
            });
            prestage_json["K"] = K;
            for (int q = 0; q < 4; ++q) {
                std::vector<double> finals;
                for (auto& r : pre) finals.push_back(r.xi[size_t(q)].final().log2_mag);
                auto agg = aggregate_log2(finals);
                counts[size_t(q)].log2 = agg.mean_log2;
                counts[size_t(q)].source = "estimated";
                counts[size_t(q)].nonempty = std::isfinite(agg.mean_log2);
                prestage_json["xi_mean_log2"][quarter_bin_name(q)] = agg.mean_log2;
            }
        }
        if (all_bins) {
            for (int q = 0; q < 4; ++q)
                if (counts[size_t(q)].nonempty) target_bins.push_back(q);
            if (target_bins.empty()) throw ConfigError("no nonempty bins to estimate");
        } else if (!counts[size_t(target_bins[0])].nonempty) {
            throw ConfigError("bin " + std::string(quarter_bin_name(target_bins[0])) +
                              " is empty for this model");
        }
    }

    // run the chains
    std::vector<EstimatorTrace> traces;
    json jbins = json::object();
    json extra = json::object();
    const fs::path out_dir(common.out_dir);

    auto dump_path = [&](uint64_t stream) {
        return out_dir / ("samples_stream" + std::to_string(stream) + ".bin");
    };
    auto make_dump = [&](const SamplerConfig& scfg, uint8_t scheme_tag,
                         std::optional<std::ofstream>& file)
        -> std::optional<SampleDumpWriter> {
        if (!a.dump) return std::nullopt;
        fs::create_directories(out_dir);
        file.emplace(dump_path(scfg.chain_id), std::ios::binary);
        SampleDumpHeader h{uint32_t(nvars), uint32_t(model.rows()), uint32_t(model.cols()),
                           scfg.seed, scfg.chain_id, scheme_tag};
        return SampleDumpWriter(*file, h);
    };

    if (*est_id == EstimatorId::uniform_z || *est_id == EstimatorId::ogata_tanemura) {
        std::array<std::optional<BinEstimate>, 4> bin_estimates;
        std::array<bool, 4> nonempty{};
        for (int q : target_bins) nonempty[size_t(q)] = counts[size_t(q)].nonempty;

        for (int q : target_bins) {
            std::vector<EstimatorTrace> bin_traces(size_t(a.chains));
            std::vector<double> accept_rates(size_t(a.chains), 1.0);
            const double lc = counts[size_t(q)].log2;
            run_pool(a.workers, a.chains, [&](int c) {
                SamplerConfig scfg{common.seed, stream_id(uint64_t(c), uint64_t(q)),
                                   a.burn_in, a.thinning, scheme, a.rejection_budget};
                std::optional<std::ofstream> dump_file;
                if (*est_id == EstimatorId::uniform_z) {
                    BinRejectionSampler smp(model, scfg, PhaseBin::exact(q));
                    auto dw = make_dump(scfg, 0, dump_file);
                    if (dw) {
                        struct Tee {
                            BinRejectionSampler& base;
                            SampleDumpWriter& w;
                            BinnedSample next() {
                                auto s = base.next();
                                w.write(s.x);
                                return s;
                            }
                        } tee{smp, *dw};
                        bin_traces[size_t(c)] = run_uniform_z_chain(
                            model, PhaseBin::exact(q), lc, tee, K, a.trace_points,
                            uint64_t(c));
                    } else {
                        bin_traces[size_t(c)] = run_uniform_z_chain(
                            model, PhaseBin::exact(q), lc, smp, K, a.trace_points,
                            uint64_t(c));
                    }
                    accept_rates[size_t(c)] = smp.acceptance_rate();
                } else {
                    GibbsSampler gibbs(model, scfg);
                    BinFilteredSampler<GibbsSampler> smp(gibbs, PhaseBin::exact(q),
                                                         a.rejection_budget);
                    auto dw = make_dump(
                        scfg, scheme == SamplerConfig::Scheme::single_site ? 1 : 2,
                        dump_file);
                    if (dw) {
                        struct Tee {
                            BinFilteredSampler<GibbsSampler>& base;
                            SampleDumpWriter& w;
                            BinnedSample next() {
                                auto s = base.next();
                                w.write(s.x);
                                return s;
                            }
                        } tee{smp, *dw};
                        bin_traces[size_t(c)] = run_ogata_tanemura_chain(
                            model, PhaseBin::exact(q), lc, tee, K, a.trace_points,
                            uint64_t(c));
                    } else {
                        bin_traces[size_t(c)] = run_ogata_tanemura_chain(
                            model, PhaseBin::exact(q), lc, smp, K, a.trace_points,
                            uint64_t(c));
                    }
                }
            });

            std::vector<double> finals;
            for (auto& tr : bin_traces) finals.push_back(tr.final().log2_mag);
            auto agg = aggregate_log2(finals);
            json jb{{"chain_finals_log2", agg.finals_log2},
                    {"mean_log2", agg.mean_log2},
                    {"normalized_mean_log2", agg.mean_log2 / nvars},
                    {"stderr_rel", agg.stderr_rel},
                    {"bin_count_log2", counts[size_t(q)].log2},
                    {"bin_count_source", counts[size_t(q)].source}};
            if (*est_id == EstimatorId::uniform_z)
                jb["acceptance_rate_per_chain"] = accept_rates;
            if (exact) jb["exact_log2"] = exact->bins[size_t(q)].log2_mag;
            jbins[quarter_bin_name(q)] = jb;

            double mag = std::exp2(agg.mean_log2);
            BinEstimate be;
            switch (q) {
                case 0: be.value = {mag, 0.0}; break;
                case 1: be.value = {0.0, mag}; break;
                case 2: be.value = {-mag, 0.0}; break;
                default: be.value = {0.0, -mag}; break;
            }
            be.stderr_linear = agg.stderr_rel * mag;
            bin_estimates[size_t(q)] = be;

            for (auto& tr : bin_traces) traces.push_back(std::move(tr));
        }

        if (all_bins) {
            auto zf = assemble_zf(bin_estimates, nonempty);
            extra["z_f"] = {{"value", {zf.z_f.real(), zf.z_f.imag()}},
                            {"stderr", zf.stderr_linear},
                            {"sum_abs", zf.sum_abs},
                            {"cancellation", zf.cancellation}};
            if (zf.cancellation)
                std::fprintf(stderr,
                             "warning: |Z_f| is below 1%% of the summed bin magnitudes; "
                             "the bin estimates cancel and the Z_f estimate is unreliable\n");
        }
    } else if (*est_id == EstimatorId::count_uniform) {
        std::vector<CountUniformResult> res(size_t(a.chains));
        run_pool(a.workers, a.chains, [&](int c) {
            SamplerConfig scfg{common.seed, stream_id(uint64_t(c), kSlotWhole), a.burn_in,
                               a.thinning, scheme, a.rejection_budget};
            UniformSampler smp(model, scfg);
            std::optional<std::ofstream> dump_file;
            auto dw = make_dump(scfg, 0, dump_file);
            if (dw) {
                struct Tee {
                    UniformSampler& base;
                    SampleDumpWriter& w;
                    BinnedSample next() {
                        auto s = base.next();
                        w.write(s.x);
                        return s;
                    }
                } tee{smp, *dw};
                res[size_t(c)] =
                    run_count_uniform_chain(model, tee, K, a.trace_points, uint64_t(c));
            } else {
                res[size_t(c)] =
                    run_count_uniform_chain(model, smp, K, a.trace_points, uint64_t(c));
            }
        });
        for (int q = 0; q < 4; ++q) {
            std::vector<double> finals;
            for (auto& r : res) finals.push_back(r.xi[size_t(q)].final().log2_mag);
            auto agg = aggregate_log2(finals);
            json jb{{"chain_finals_log2", agg.finals_log2},
                    {"mean_log2", agg.mean_log2},
                    {"stderr_rel", agg.stderr_rel}};
            if (exact) jb["exact_count_log2"] = mpz_log2(exact->bins[size_t(q)].count);
            jbins[quarter_bin_name(q)] = jb;
        }
        uint64_t zero_total = 0, other_total = 0, grand_total = 0;
        for (auto& r : res) {
            zero_total += r.zero_hits;
            other_total += r.other_hits;
            grand_total += r.total;
            for (auto& tr : r.xi) traces.push_back(std::move(tr));
            traces.push_back(std::move(r.xi_zero));
        }
        extra["hit_totals"] = {{"zero", zero_total},
                               {"off_axis", other_total},
                               {"samples", grand_total}};
    } else {  // count_absgibbs
        std::vector<AbsGibbsCountResult> res(size_t(a.chains));
        run_pool(a.workers, a.chains, [&](int c) {
            SamplerConfig scfg{common.seed, stream_id(uint64_t(c), kSlotWhole), a.burn_in,
                               a.thinning, scheme, a.rejection_budget};
            GibbsSampler smp(model, scfg);
            std::optional<std::ofstream> dump_file;
            auto dw = make_dump(scfg, scheme == SamplerConfig::Scheme::single_site ? 1 : 2,
                                dump_file);
            if (dw) {
                struct Tee {
                    GibbsSampler& base;
                    SampleDumpWriter& w;
                    BinnedSample next() {
                        auto s = base.next();
                        w.write(s.x);
                        return s;
                    }
                } tee{smp, *dw};
                res[size_t(c)] =
                    run_count_absgibbs_chain(model, tee, K, a.trace_points, uint64_t(c));
            } else {
                res[size_t(c)] =
                    run_count_absgibbs_chain(model, smp, K, a.trace_points, uint64_t(c));
            }
        });
        std::vector<double> ratios, xplus_l2, xminus_l2;
        for (auto& r : res) {
            ratios.push_back(r.ratio);
            xplus_l2.push_back(r.log2_xplus);
            xminus_l2.push_back(r.log2_xminus);
        }
        double ratio_mean = 0;
        for (double r : ratios) ratio_mean += r;
        ratio_mean /= double(ratios.size());
        extra["ratio_per_chain"] = ratios;
        extra["ratio_mean"] = ratio_mean;
        extra["xplus"] = {{"chain_finals_log2", xplus_l2},
                          {"mean_log2", aggregate_log2(xplus_l2).mean_log2}};
        extra["xminus"] = {{"chain_finals_log2", xminus_l2},
                           {"mean_log2", aggregate_log2(xminus_l2).mean_log2}};
        if (exact) {
            extra["xplus"]["exact_log2"] = mpz_log2(exact->bins[0].count);
            extra["xminus"]["exact_log2"] = mpz_log2(exact->bins[2].count);
        }
        for (auto& r : res) {
            traces.push_back(std::move(r.lambda_trace));
            traces.push_back(std::move(r.gamma_trace));
        }
    }

    // outputs (chain order is fixed, so files are identical for any pool size)
    {
        auto csv = open_out(out_dir, "trace.csv");
        write_trace_csv(csv, traces);
    }
    json summary{{"command", "estimate"},
                 {"model", model_json(model)},
                 {"estimator", a.estimator},
                 {"bin", a.bin},
                 {"K", K},
                 {"chains", a.chains},
                 {"seed", common.seed},
                 {"sampler",
                  {{"scheme", a.scheme}, {"burn_in", a.burn_in}, {"thinning", a.thinning}}},
                 {"bins", jbins}};
    for (auto& [k, v] : extra.items()) summary[k] = v;
    if (!prestage_json.empty()) summary["bin_count_prestage"] = prestage_json;
    {
        auto js = open_out(out_dir, "summary.json");
        js << summary.dump(2) << '\n';
    }
    if (a.svg) {
        auto svg = open_out(out_dir, "trace.svg");
        const bool z_type =
            *est_id == EstimatorId::uniform_z || *est_id == EstimatorId::ogata_tanemura;
        double y_scale = z_type ? 1.0 / nvars : 1.0;
        std::string label = z_type ? "(1/N) log2 of the bin partition estimate"
                                   : "log2 of the running estimate";
        std::optional<double> ref;
        if (exact && z_type && !target_bins.empty())
            ref = exact->bins[size_t(target_bins[0])].log2_mag * y_scale;
        write_svg_traces(svg, traces, y_scale, label, ref);
    }

    std::printf("wrote %s\n", (out_dir / "trace.csv").string().c_str());
    std::printf("wrote %s\n", (out_dir / "summary.json").string().c_str());
    if (a.svg) std::printf("wrote %s\n", (out_dir / "trace.svg").string().c_str());
    if (extra.contains("ratio_mean")) {
        std::printf("lambda/gamma ratio mean = %.6f\n", extra["ratio_mean"].get<double>());
        std::printf("log2 |X+| estimate = %.6f   log2 |X-| estimate = %.6f\n",
                    extra["xplus"]["mean_log2"].get<double>(),
                    extra["xminus"]["mean_log2"].get<double>());
    }
    for (auto& [key, val] : jbins.items()) {
        if (val.contains("normalized_mean_log2")) {
            std::string suffix;
            if (val.contains("exact_log2")) {
                char buf[64];
                std::snprintf(buf, sizeof buf, "  (exact %.6f)",
                              val["exact_log2"].get<double>() / nvars);
                suffix = buf;
            }
            std::printf("%s: (1/N) log2 estimate = %.6f%s\n", key.c_str(),
                        val["normalized_mean_log2"].get<double>(), suffix.c_str());
        } else if (val.contains("mean_log2")) {
            std::printf("%s: log2 estimate = %.6f\n", key.c_str(),
                        val["mean_log2"].get<double>());
        }
    }
    return 0;
}

// ---- exact -------------------------------------------------------------------

struct ExactArgs {
    ModelArgs model;
    std::string method = "auto";  // auto | brute | transfer | both
    int max_n = 24;
    int max_cols = 14;
    int threads = 0;
};

int cmd_exact(const ExactArgs& a, const CommonArgs& common) {
    GridModel model = build_model(a.model);
    json out{{"command", "exact"}, {"model", model_json(model)}};
    std::optional<PartitionSummary> brute, transfer;

    std::string method = a.method;
    if (method == "auto")
        method = (model.kernel_all_quarter() &&
                  std::min(model.rows(), model.cols()) <= a.max_cols)
                     ? "transfer"
                     : "brute";

    if (method == "brute" || method == "both")
        brute = brute_force_summary(model, {a.max_n, a.threads});
    if (method == "transfer" || method == "both")
        transfer = transfer_matrix_summary(model, {a.max_cols, true, true});

    if (brute) {
        std::printf("== brute force ==\n");
        print_summary_table(*brute, model.num_vars());
        out["brute"] = brute->to_json();
    }
    if (transfer) {
        std::printf("== transfer ==\n");
        print_summary_table(*transfer, model.num_vars());
        out["transfer"] = transfer->to_json();
    }
    if (brute && transfer) {
        bool agree = true;
        for (int q = 0; q < 4; ++q) {
            agree &= brute->bins[q].count == transfer->bins[q].count;
            double rel = std::abs(brute->bins[q].sum_mag - transfer->bins[q].sum_mag);
            if (brute->bins[q].sum_mag > 0) rel /= brute->bins[q].sum_mag;
            agree &= rel <= 1e-9;
        }
        out["methods_agree"] = agree;
        std::printf("methods agree: %s\n", agree ? "yes" : "NO");
    }

    auto js = open_out(common.out_dir, "exact_summary.json");
    js << out.dump(2) << '\n';
    std::printf("wrote %s\n", (fs::path(common.out_dir) / "exact_summary.json").string().c_str());
    return 0;
}

// ---- dual-check ----------------------------------------------------------------

struct DualArgs {
    ModelArgs model;
    int max_n = 20;
    int max_free_dims = 24;
};

int cmd_dual_check(const DualArgs& a, const CommonArgs& common) {
    GridModel model = build_model(a.model);
    DualityReport rep = duality_check(model, {a.max_n, a.max_free_dims});
    json j = to_json(rep);
    auto js = open_out(common.out_dir, "dual_check.json");
    js << j.dump(2) << '\n';

    std::printf("Z_f = %s + %s i\n", format_double(rep.z_f.real()).c_str(),
                format_double(rep.z_f.imag()).c_str());
    std::printf("Z_d = %s + %s i\n", format_double(rep.z_d.real()).c_str(),
                format_double(rep.z_d.imag()).c_str());
    if (rep.ratio)
        std::printf("ratio Z_d/Z_f = %s + %s i\n", format_double(rep.ratio->real()).c_str(),
                    format_double(rep.ratio->imag()).c_str());
    std::printf("zero equivalence: %s\n", rep.zero_equivalence ? "PASS" : "FAIL");
    return rep.zero_equivalence ? 0 : 1;
}

// ---- presets -------------------------------------------------------------------

int cmd_presets() {
    std::printf("known kernel presets (entries indexed (left-or-upper, right-or-lower)):\n\n");
    for (const char* name : {"neg13", "cplx15i", "pm(1)"}) {
        auto k = PairwiseKernel::preset(name);
        std::printf("%s:\n", name);
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                std::printf("  kernel(%d,%d) = %s + %s i\n", a, b,
                            format_double(k.at(a, b).re()).c_str(),
                            format_double(k.at(a, b).im()).c_str());
    }
    std::printf(
        "\npm(<a>) accepts any complex literal, e.g. pm(-2.5), pm(i), pm(1+2i).\n"
        "Ad-hoc kernels load from JSON: "
        "{\"entries\": [[[re,im],[re,im]],[[re,im],[re,im]]]}\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"partition functions of grid factor graphs with signed/complex factors"};
    app.require_subcommand(1);

    CommonArgs common;
    common.seed = env_seed_default();

    EstimateArgs ea;
    ExactArgs xa;
    DualArgs da;

    try {
        json cfg = load_config(argc, argv);
        // config file values override defaults; command-line flags override both
        cfg_get(cfg, "out", common.out_dir);
        cfg_get(cfg, "seed", common.seed);
        cfg_get(cfg, "preset", ea.model.preset);
        cfg_get(cfg, "kernel", ea.model.kernel_file);
        cfg_get(cfg, "size", ea.model.size);
        cfg_get(cfg, "rows", ea.model.rows);
        cfg_get(cfg, "cols", ea.model.cols);
        cfg_get(cfg, "estimator", ea.estimator);
        cfg_get(cfg, "bin", ea.bin);
        cfg_get_count(cfg, "K", ea.K_str);
        cfg_get(cfg, "chains", ea.chains);
        cfg_get(cfg, "workers", ea.workers);
        cfg_get(cfg, "trace-points", ea.trace_points);
        cfg_get(cfg, "burn-in", ea.burn_in);
        cfg_get(cfg, "thinning", ea.thinning);
        cfg_get(cfg, "scheme", ea.scheme);
        xa.model = da.model = ea.model;

        std::string config_path;  // consumed by load_config; declared for --help

        auto* est = app.add_subcommand("estimate", "run Monte Carlo estimator chains");
        add_model_options(est, ea.model);
        est->add_option("--config", config_path, "JSON config file (flags override it)");
        est->add_option("--estimator", ea.estimator,
                        "uniform_z | ogata_tanemura | count_uniform | count_absgibbs");
        est->add_option("--bin", ea.bin, "plus | plus_i | minus | minus_i | all");
        est->add_option("--K", ea.K_str, "samples per chain (1e5 literals accepted)");
        est->add_option("--chains", ea.chains, "independent chains");
        est->add_option("--workers", ea.workers, "worker threads (0 = hardware)");
        est->add_option("--trace-points", ea.trace_points, "recorded points per trace");
        est->add_option("--burn-in", ea.burn_in, "Gibbs burn-in sweeps");
        est->add_option("--thinning", ea.thinning, "Gibbs sweeps per retained sample");
        est->add_option("--scheme", ea.scheme, "row-blocked | single-site");
        est->add_option("--bin-count", ea.bin_count, "|X_bin| as a decimal integer");
        est->add_option("--bin-count-log2", ea.bin_count_log2, "log2 |X_bin|");
        est->add_option("--max-cols", ea.max_cols, "transfer width cap for exact references");
        est->add_option("--rejection-budget", ea.rejection_budget,
                        "proposals allowed per accepted sample");
        est->add_flag("--svg", ea.svg, "write trace.svg");
        est->add_flag("--dump", ea.dump, "write binary sample dumps per stream");
        est->add_option("--out", common.out_dir, "output directory");
        est->add_option("--seed", common.seed, "RNG seed (env FGMC_SEED is the fallback)");

        auto* exact = app.add_subcommand("exact", "exact partition summaries");
        add_model_options(exact, xa.model);
        exact->add_option("--config", config_path, "JSON config file");
        exact->add_option("--method", xa.method, "auto | brute | transfer | both");
        exact->add_option("--max-n", xa.max_n, "brute-force variable cap");
        exact->add_option("--max-cols", xa.max_cols, "transfer width cap");
        exact->add_option("--threads", xa.threads, "brute-force threads (0 = hardware)");
        exact->add_option("--out", common.out_dir, "output directory");
        exact->add_option("--seed", common.seed, "unused; accepted for config uniformity");

        auto* dual = app.add_subcommand("dual-check", "primal/dual zero-equivalence check");
        add_model_options(dual, da.model);
        dual->add_option("--config", config_path, "JSON config file");
        dual->add_option("--max-n", da.max_n, "primal enumeration cap");
        dual->add_option("--max-free-dims", da.max_free_dims,
                         "dual solution-space enumeration cap");
        dual->add_option("--out", common.out_dir, "output directory");

        app.add_subcommand("presets", "list built-in kernels");

        app.parse(argc, argv);

        if (est->parsed()) return cmd_estimate(ea, common);
        if (exact->parsed()) return cmd_exact(xa, common);
        if (dual->parsed()) return cmd_dual_check(da, common);
        return cmd_presets();
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const DimensionError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const UnsupportedKernelError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const UnsupportedEstimatorError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const ResourceCapError& e) {
        std::fprintf(stderr, "resource cap: %s\n", e.what());
        return 3;
    } catch (const ContractViolationError& e) {
        std::fprintf(stderr, "estimator contract violation: %s\n", e.what());
        return 4;
    } catch (const EmptyBinSuspectedError& e) {
        std::fprintf(stderr, "estimator contract violation: %s\n", e.what());
        return 4;
    } catch (const PreconditionError& e) {
        std::fprintf(stderr, "estimator contract violation: %s\n", e.what());
        return 4;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
