#pragma once

#include <array>
#include <cstdint>

#include "fgmc/grid.hpp"
#include "fgmc/phase.hpp"

namespace fgmc {

struct EdgeCategoryCounts {
    // c[a][b] = number of edges whose (left/upper, right/lower) values are (a, b)
    std::array<std::array<int64_t, 2>, 2> c{};
    int64_t total() const { return c[0][0] + c[0][1] + c[1][0] + c[1][1]; }
    friend bool operator==(const EdgeCategoryCounts& x, const EdgeCategoryCounts& y) {
        return x.c == y.c;
    }
};

// Popcount-based category counting over the packed row words: the whole
// evaluation of f reduces to a handful of word ops per row.
EdgeCategoryCounts count_edge_categories(const GridModel& model, const Assignment& x);

// Plain per-edge loop; reference for the word-parallel version.
EdgeCategoryCounts count_edge_categories_by_edge(const GridModel& model, const Assignment& x);

// Product of kernel entries over all edges. For all-quarter-turn kernels the
// phase is accumulated as an integer index, never through floating-point arg.
ComplexValue evaluate_f(const GridModel& model, const Assignment& x);

// |f(x)| directly from entry magnitudes, no phase tracking.
double abs_f(const GridModel& model, const Assignment& x);

}  // namespace fgmc
