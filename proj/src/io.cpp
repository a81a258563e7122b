#include "fgmc/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <istream>
#include <ostream>

#include "fgmc/errors.hpp"

namespace fgmc {

namespace {

constexpr char kDumpMagic[8] = {'F', 'G', 'M', 'C', 'D', 'M', 'P', '1'};

template <class T>
void put_le(std::ostream& os, T v) {
    unsigned char buf[sizeof(T)];
    for (size_t i = 0; i < sizeof(T); ++i) buf[i] = (unsigned char)(uint64_t(v) >> (8 * i));
    os.write(reinterpret_cast<const char*>(buf), sizeof(T));
}

template <class T>
T get_le(std::istream& is) {
    unsigned char buf[sizeof(T)];
    is.read(reinterpret_cast<char*>(buf), sizeof(T));
    uint64_t v = 0;
    for (size_t i = 0; i < sizeof(T); ++i) v |= uint64_t(buf[i]) << (8 * i);
    return T(v);
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_trace_csv(std::ostream& os, const std::vector<EstimatorTrace>& traces) {
    os << "chain_id,k,estimate_log2,estimate_re,estimate_im\n";
    for (const auto& tr : traces)
        for (const auto& p : tr.running)
            os << tr.chain_id << ',' << p.k << ',' << format_double(p.log2_mag) << ','
               << format_double(p.value.real()) << ',' << format_double(p.value.imag())
               << '\n';
}

SampleDumpWriter::SampleDumpWriter(std::ostream& os, const SampleDumpHeader& h)
    : os_(os), n_(h.n) {
    os_.write(kDumpMagic, sizeof kDumpMagic);
    put_le(os_, h.n);
    put_le(os_, h.rows);
    put_le(os_, h.cols);
    put_le(os_, h.seed);
    put_le(os_, h.chain_id);
    put_le(os_, h.scheme);
}

void SampleDumpWriter::write(const Assignment& x) {
    auto bytes = x.pack_bytes();
    os_.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
}

SampleDump read_sample_dump(std::istream& is) {
    char magic[8];
    is.read(magic, 8);
    if (!is || std::memcmp(magic, kDumpMagic, 8) != 0)
        throw ConfigError("not a sample dump (bad magic)");
    SampleDump d;
    d.header.n = get_le<uint32_t>(is);
    d.header.rows = get_le<uint32_t>(is);
    d.header.cols = get_le<uint32_t>(is);
    d.header.seed = get_le<uint64_t>(is);
    d.header.chain_id = get_le<uint64_t>(is);
    d.header.scheme = get_le<uint8_t>(is);
    if (!is) throw ConfigError("truncated sample dump header");
    const size_t nbytes = (d.header.n + 7) / 8;
    std::vector<uint8_t> buf(nbytes);
    for (;;) {
        is.read(reinterpret_cast<char*>(buf.data()), std::streamsize(nbytes));
        if (is.gcount() == 0) break;
        if (size_t(is.gcount()) != nbytes) throw ConfigError("truncated sample record");
        d.samples.push_back(
            Assignment::unpack_bytes(int(d.header.rows), int(d.header.cols), buf));
    }
    return d;
}

void write_svg_traces(std::ostream& os, const std::vector<EstimatorTrace>& traces,
                      double y_scale, const std::string& y_label,
                      std::optional<double> reference) {
    static const char* palette[10] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                      "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
                                      "#bcbd22", "#17becf"};
    const double W = 900, H = 520, ml = 80, mr = 20, mt = 20, mb = 50;

    double kmax = 1, ymin = 1e300, ymax = -1e300;
    for (const auto& tr : traces)
        for (const auto& p : tr.running) {
            double y = p.log2_mag * y_scale;
            if (!std::isfinite(y)) continue;
            kmax = std::max(kmax, double(p.k));
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    if (reference) {
        ymin = std::min(ymin, *reference);
        ymax = std::max(ymax, *reference);
    }
    if (ymin > ymax) {
        ymin = 0;
        ymax = 1;
    }
    double pad = (ymax - ymin) * 0.08 + 1e-12;
    ymin -= pad;
    ymax += pad;

    auto px = [&](double k) { return ml + (W - ml - mr) * (k / kmax); };
    auto py = [&](double y) { return H - mb - (H - mt - mb) * ((y - ymin) / (ymax - ymin)); };

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
       << "\" viewBox=\"0 0 " << W << " " << H << "\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // axes + ticks
    os << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr << "\" y2=\""
       << H - mb << "\" stroke=\"black\"/>\n"
       << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\""
       << H - mb << "\" stroke=\"black\"/>\n";
    for (int t = 0; t <= 5; ++t) {
        double k = kmax * t / 5, y = ymin + (ymax - ymin) * t / 5;
        os << "<line x1=\"" << px(k) << "\" y1=\"" << H - mb << "\" x2=\"" << px(k)
           << "\" y2=\"" << H - mb + 5 << "\" stroke=\"black\"/>\n"
           << "<text x=\"" << px(k) << "\" y=\"" << H - mb + 20
           << "\" font-size=\"12\" text-anchor=\"middle\">" << format_double(k)
           << "</text>\n"
           << "<line x1=\"" << ml - 5 << "\" y1=\"" << py(y) << "\" x2=\"" << ml
           << "\" y2=\"" << py(y) << "\" stroke=\"black\"/>\n"
           << "<text x=\"" << ml - 8 << "\" y=\"" << py(y) + 4
           << "\" font-size=\"12\" text-anchor=\"end\">";
        char num[32];
        std::snprintf(num, sizeof num, "%.4g", y);
        os << num << "</text>\n";
    }
    os << "<text x=\"" << (ml + W - mr) / 2 << "\" y=\"" << H - 12
       << "\" font-size=\"13\" text-anchor=\"middle\">samples k</text>\n"
       << "<text x=\"16\" y=\"" << (mt + H - mb) / 2
       << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
       << (mt + H - mb) / 2 << ")\">" << y_label << "</text>\n";

    if (reference) {
        os << "<line x1=\"" << ml << "\" y1=\"" << py(*reference) << "\" x2=\"" << W - mr
           << "\" y2=\"" << py(*reference)
           << "\" stroke=\"black\" stroke-dasharray=\"6 4\" stroke-width=\"1\"/>\n";
    }

    int ci = 0;
    for (const auto& tr : traces) {
        os << "<polyline fill=\"none\" stroke=\"" << palette[ci++ % 10]
           << "\" stroke-width=\"1\" points=\"";
        for (const auto& p : tr.running) {
            double y = p.log2_mag * y_scale;
            if (!std::isfinite(y)) continue;
            char pt[64];
            std::snprintf(pt, sizeof pt, "%.2f,%.2f ", px(double(p.k)), py(y));
            os << pt;
        }
        os << "\"/>\n";
    }
    os << "</svg>\n";
}

}  // namespace fgmc
