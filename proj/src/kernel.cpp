#include "fgmc/kernel.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>

#include "fgmc/errors.hpp"

namespace fgmc {

bool PairwiseKernel::has_zero_entry() const {
    for (const auto& row : entries)
        for (const auto& e : row)
            if (e.is_zero()) return true;
    return false;
}

bool PairwiseKernel::all_quarter() const {
    for (const auto& row : entries)
        for (const auto& e : row)
            if (!e.is_quarter()) return false;
    return true;
}

bool PairwiseKernel::all_real() const {
    for (const auto& row : entries)
        for (const auto& e : row)
            if (e.im() != 0.0) return false;
    return true;
}

double PairwiseKernel::max_abs() const {
    double m = 0.0;
    for (const auto& row : entries)
        for (const auto& e : row) m = std::max(m, e.magnitude());
    return m;
}

double PairwiseKernel::min_abs() const {
    double m = entries[0][0].magnitude();
    for (const auto& row : entries)
        for (const auto& e : row) m = std::min(m, e.magnitude());
    return m;
}

PairwiseKernel PairwiseKernel::scaled(double c) const {
    PairwiseKernel k;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) k.entries[a][b] = entries[a][b].scaled(c);
    return k;
}

std::complex<double> parse_complex_literal(std::string_view s) {
    // strip spaces
    std::string t;
    for (char c : s)
        if (c != ' ') t.push_back(c);
    if (t.empty()) throw ConfigError("empty complex literal");

    auto parse_real = [](std::string_view v, double& out) -> bool {
        if (!v.empty() && v.front() == '+') v.remove_prefix(1);  // from_chars rejects '+'
        if (v.empty()) return false;
        auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
        return ec == std::errc() && p == v.data() + v.size();
    };

    // pure imaginary: "i", "-i", "2i", "-0.5i"
    if (t.back() == 'i' || t.back() == 'I') {
        // find split point of form a+bi / a-bi (sign not at position 0)
        for (size_t pos = t.size() - 1; pos > 0; --pos) {
            char c = t[pos];
            if ((c == '+' || c == '-') && t[pos - 1] != 'e' && t[pos - 1] != 'E') {
                double re = 0.0, im = 0.0;
                std::string ims = t.substr(pos, t.size() - pos - 1);
                if (ims == "+") ims = "1";
                if (ims == "-") ims = "-1";
                if (parse_real(t.substr(0, pos), re) && parse_real(ims, im))
                    return {re, im};
                break;
            }
        }
        std::string ims = t.substr(0, t.size() - 1);
        if (ims.empty()) ims = "1";
        if (ims == "-") ims = "-1";
        double im = 0.0;
        if (parse_real(ims, im)) return {0.0, im};
        throw ConfigError("bad complex literal: " + std::string(s));
    }

    double re = 0.0;
    if (parse_real(t, re)) return {re, 0.0};
    throw ConfigError("bad complex literal: " + std::string(s));
}

PairwiseKernel PairwiseKernel::preset(std::string_view spec) {
    PairwiseKernel k;
    k.name = std::string(spec);
    if (spec == "neg13") {
        k.entries[0][0] = ComplexValue::real(1.3);
        k.entries[0][1] = ComplexValue::real(-1.0);
        k.entries[1][0] = ComplexValue::real(-1.0);
        k.entries[1][1] = ComplexValue::real(1.0);
        return k;
    }
    if (spec == "cplx15i") {
        k.entries[0][0] = ComplexValue::real(1.5);
        k.entries[0][1] = ComplexValue::real(1.0);
        k.entries[1][0] = ComplexValue::real(1.0);
        k.entries[1][1] = ComplexValue::quarter(1.0, 1);
        return k;
    }
    if (spec.starts_with("pm(") && spec.ends_with(")")) {
        auto a = ComplexValue::from_complex(
            parse_complex_literal(spec.substr(3, spec.size() - 4)));
        k.entries[0][0] = a;
        k.entries[1][1] = a;
        k.entries[0][1] = -a;
        k.entries[1][0] = -a;
        return k;
    }
    throw ConfigError("unknown kernel preset: " + std::string(spec) +
                      " (known: neg13, cplx15i, pm(<a>))");
}

PairwiseKernel PairwiseKernel::from_json(const nlohmann::json& j) {
    if (!j.contains("entries")) throw ConfigError("kernel json: missing \"entries\"");
    const auto& e = j["entries"];
    if (!e.is_array() || e.size() != 2 || !e[0].is_array() || e[0].size() != 2 ||
        !e[1].is_array() || e[1].size() != 2)
        throw ConfigError("kernel json: \"entries\" must be a 2x2 array of [re,im]");
    PairwiseKernel k;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            const auto& v = e[a][b];
            if (!v.is_array() || v.size() != 2)
                throw ConfigError("kernel json: each entry must be [re,im]");
            k.entries[a][b] =
                ComplexValue::cartesian(v[0].get<double>(), v[1].get<double>());
        }
    if (j.contains("name")) k.name = j["name"].get<std::string>();
    return k;
}

nlohmann::json PairwiseKernel::to_json() const {
    nlohmann::json e = nlohmann::json::array();
    for (int a = 0; a < 2; ++a) {
        nlohmann::json row = nlohmann::json::array();
        for (int b = 0; b < 2; ++b)
            row.push_back({entries[a][b].re(), entries[a][b].im()});
        e.push_back(row);
    }
    nlohmann::json j{{"entries", e}};
    if (!name.empty()) j["name"] = name;
    return j;
}

PairwiseKernel PairwiseKernel::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open kernel file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("kernel file " + path + ": " + e.what());
    }
    return from_json(j);
}

}  // namespace fgmc
