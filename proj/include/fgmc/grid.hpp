#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "fgmc/kernel.hpp"

namespace fgmc {

// Bit-packed binary assignment over an m x m' grid, row-major variable order,
// one 64-bit word per row (grids are capped at 64 columns).
class Assignment {
  public:
    Assignment(int rows, int cols);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int size() const { return rows_ * cols_; }

    bool bit(int idx) const {
        return (words_[idx / cols_] >> (idx % cols_)) & 1u;
    }
    void set_bit(int idx, bool v) {
        uint64_t m = uint64_t(1) << (idx % cols_);
        if (v)
            words_[idx / cols_] |= m;
        else
            words_[idx / cols_] &= ~m;
    }
    bool at(int r, int c) const { return (words_[r] >> c) & 1u; }
    void set(int r, int c, bool v) { set_bit(r * cols_ + c, v); }

    uint64_t row_word(int r) const { return words_[r]; }
    void set_row_word(int r, uint64_t w) { words_[r] = w & row_mask(); }
    uint64_t row_mask() const {
        return cols_ == 64 ? ~uint64_t(0) : (uint64_t(1) << cols_) - 1;
    }

    // Low N bits of `packed`, row-major. Requires N <= 64.
    static Assignment from_index(int rows, int cols, uint64_t packed);
    uint64_t to_index() const;  // requires N <= 64

    // Contiguous row-major bit packing, LSB-first within each byte.
    std::vector<uint8_t> pack_bytes() const;
    static Assignment unpack_bytes(int rows, int cols, const std::vector<uint8_t>& bytes);

    friend bool operator==(const Assignment& a, const Assignment& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.words_ == b.words_;
    }

  private:
    int rows_, cols_;
    std::vector<uint64_t> words_;
};

// Rectangular grid of binary variables with one pairwise kernel applied to
// every horizontally and vertically adjacent pair, oriented
// (left-or-upper, right-or-lower). Immutable after construction and safe to
// share across threads.
class GridModel {
  public:
    GridModel(int rows, int cols, PairwiseKernel kernel);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int num_vars() const { return rows_ * cols_; }
    int num_edges() const { return rows_ * (cols_ - 1) + cols_ * (rows_ - 1); }
    const PairwiseKernel& kernel() const { return kernel_; }

    // Ordered (first, second) = (left, right) for horizontal and
    // (upper, lower) for vertical edges, emitted in row-major site order.
    std::vector<std::pair<int, int>> edges() const;

    bool kernel_all_quarter() const { return all_quarter_; }

    // |kernel(a,b)|^e for e in [0, num_edges()], built by cumulative products
    // so repeated evaluation is deterministic and cheap.
    double mag_pow(int a, int b, int64_t e) const { return mag_pow_[a][b][size_t(e)]; }
    // Quarter-turn index of entry (a,b); only meaningful when all_quarter.
    int entry_quarter(int a, int b) const { return quarter_[a][b]; }
    bool entry_zero(int a, int b) const { return zero_[a][b]; }

    // Scale exponents for overflow-safe estimator accumulators:
    // log2 max_x |f(x)| <= log2_f_upper(), log2 min_x |f(x)| >= log2_f_lower()
    // (bounds from per-edge extremes; exact enough for scaling purposes).
    double log2_f_upper() const { return log2_upper_; }
    double log2_f_lower() const { return log2_lower_; }

  private:
    int rows_, cols_;
    PairwiseKernel kernel_;
    bool all_quarter_;
    std::array<std::array<std::vector<double>, 2>, 2> mag_pow_;
    int quarter_[2][2];
    bool zero_[2][2];
    double log2_upper_, log2_lower_;
};

}  // namespace fgmc
