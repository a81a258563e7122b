#include "fgmc/grid.hpp"

#include <cmath>

#include "fgmc/errors.hpp"

namespace fgmc {

Assignment::Assignment(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 1 || cols < 1 || cols > 64)
        throw DimensionError("assignment shape out of range");
    words_.assign(size_t(rows), 0);
}

Assignment Assignment::from_index(int rows, int cols, uint64_t packed) {
    Assignment a(rows, cols);
    if (rows * cols > 64) throw DimensionError("from_index requires N <= 64");
    for (int r = 0; r < rows; ++r)
        a.words_[r] = (packed >> (r * cols)) & a.row_mask();
    return a;
}

uint64_t Assignment::to_index() const {
    if (size() > 64) throw DimensionError("to_index requires N <= 64");
    uint64_t x = 0;
    for (int r = rows_ - 1; r >= 0; --r) x = (x << cols_) | words_[r];
    return x;
}

std::vector<uint8_t> Assignment::pack_bytes() const {
    std::vector<uint8_t> out((size() + 7) / 8, 0);
    for (int i = 0; i < size(); ++i)
        if (bit(i)) out[i / 8] |= uint8_t(1u << (i % 8));
    return out;
}

Assignment Assignment::unpack_bytes(int rows, int cols, const std::vector<uint8_t>& bytes) {
    Assignment a(rows, cols);
    int n = rows * cols;
    if (bytes.size() != size_t((n + 7) / 8))
        throw DimensionError("unpack_bytes: wrong byte count");
    for (int i = 0; i < n; ++i)
        a.set_bit(i, (bytes[i / 8] >> (i % 8)) & 1u);
    return a;
}

GridModel::GridModel(int rows, int cols, PairwiseKernel kernel)
    : rows_(rows), cols_(cols), kernel_(std::move(kernel)) {
    if (rows < 1 || cols < 1) throw DimensionError("grid dimensions must be positive");
    if (cols > 64) throw DimensionError("grids wider than 64 columns are not supported");
    all_quarter_ = kernel_.all_quarter();

    int64_t ne = num_edges();
    log2_upper_ = 0.0;
    log2_lower_ = 0.0;
    double lmax = -std::numeric_limits<double>::infinity();
    double lmin = std::numeric_limits<double>::infinity();
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            const ComplexValue& e = kernel_.at(a, b);
            quarter_[a][b] = e.is_quarter() ? e.quarter_index() : -1;
            zero_[a][b] = e.is_zero();
            auto& tab = mag_pow_[a][b];
            tab.resize(size_t(ne) + 1);
            tab[0] = 1.0;
            for (int64_t k = 1; k <= ne; ++k) tab[size_t(k)] = tab[size_t(k - 1)] * e.magnitude();
            double l = std::log2(e.magnitude());
            lmax = std::max(lmax, l);
            lmin = std::min(lmin, l);
        }
    log2_upper_ = double(ne) * lmax;
    log2_lower_ = double(ne) * lmin;  // -inf when some entry is zero
}

std::vector<std::pair<int, int>> GridModel::edges() const {
    std::vector<std::pair<int, int>> es;
    es.reserve(size_t(num_edges()));
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) {
            int k = r * cols_ + c;
            if (c + 1 < cols_) es.emplace_back(k, k + 1);
            if (r + 1 < rows_) es.emplace_back(k, k + cols_);
        }
    return es;
}

}  // namespace fgmc
