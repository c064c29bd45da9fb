#pragma once

// Data-parallel inner loops shared by the dense assignment solver and the
// greedy bracket. Each kernel has a scalar reference implementation and, on
// x86-64, an AVX2 variant; the active table is chosen once at startup from
// CPUID and can be pinned with MASSIGN_SIMD=scalar|avx2.
//
// All variants are required to return bit-identical results, including the
// index chosen among ties (always the lowest index).

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace massign::kernels {

/// Mask lanes: 0 means available / unscanned, all-ones (-1) means taken.
using Mask = std::int64_t;

struct ArgResult {
    std::int64_t value;
    std::int64_t index;  ///< -1 when no lane was available
};

struct KernelTable {
    std::string_view name;

    /// One Dijkstra relaxation of the shortest-augmenting-path solver.
    /// For every column j with taken[j] == 0:
    ///   reduced = base + (negate ? -row[j] : row[j]) - col_potential[j]
    ///   if reduced < dist[j]: dist[j] = reduced, via[j] = from
    /// Returns the minimum dist[j] over untaken columns and its lowest index.
    ArgResult (*relax)(const std::int64_t* row, std::int64_t base, bool negate,
                       const std::int64_t* col_potential, std::int64_t* dist, std::int64_t* via,
                       const Mask* taken, std::int64_t from, std::size_t n);

    /// dist[j] -= delta for every untaken column.
    void (*shift_untaken)(std::int64_t* dist, const Mask* taken, std::int64_t delta, std::size_t n);

    /// Largest / smallest row[j] over untaken j, lowest index among ties.
    ArgResult (*masked_argmax)(const std::int64_t* row, const Mask* taken, std::size_t n);
    ArgResult (*masked_argmin)(const std::int64_t* row, const Mask* taken, std::size_t n);

    /// max_j row[j]; 0 for an empty row.
    std::int64_t (*row_max)(const std::int64_t* row, std::size_t n);
};

const KernelTable& scalar_table() noexcept;

/// nullptr when the build or the CPU lacks AVX2.
const KernelTable* avx2_table() noexcept;

/// Table selected for this process.
const KernelTable& active() noexcept;

}  // namespace massign::kernels
