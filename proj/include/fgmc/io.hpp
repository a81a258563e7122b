#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fgmc/estimators.hpp"
#include "fgmc/grid.hpp"

namespace fgmc {

// Shortest-roundtrip decimal rendering ("%.17g"), stable across runs.
std::string format_double(double v);

// Columns: chain_id,k,estimate_log2,estimate_re,estimate_im. Rows grouped by
// trace in the order given, ascending k inside each trace.
void write_trace_csv(std::ostream& os, const std::vector<EstimatorTrace>& traces);

// Binary sample dump. Little-endian layout:
//   8 bytes  magic "FGMCDMP1"
//   u32 n, u32 rows, u32 cols
//   u64 seed, u64 chain_id
//   u8  scheme (0 = uniform, 1 = single-site, 2 = row-blocked)
// followed by ceil(n/8) bytes per sample: row-major bits, LSB-first per byte.
struct SampleDumpHeader {
    uint32_t n = 0, rows = 0, cols = 0;
    uint64_t seed = 0, chain_id = 0;
    uint8_t scheme = 0;
};

class SampleDumpWriter {
  public:
    SampleDumpWriter(std::ostream& os, const SampleDumpHeader& h);
    void write(const Assignment& x);

  private:
    std::ostream& os_;
    uint32_t n_;
};

struct SampleDump {
    SampleDumpHeader header;
    std::vector<Assignment> samples;
};

SampleDump read_sample_dump(std::istream& is);

// Convergence plot: one polyline per trace of (k, log2_mag * y_scale), with a
// horizontal dashed reference line when given.
void write_svg_traces(std::ostream& os, const std::vector<EstimatorTrace>& traces,
                      double y_scale, const std::string& y_label,
                      std::optional<double> reference);

}  // namespace fgmc
