#pragma once

// Zero cells of a count matrix and perfect matchings supported on them.
// A perfect matching of zero cells is a permutation with S(sigma) = 0, so its
// existence is equivalent to the exact minimum being zero.

#include <utility>
#include <vector>

#include "massign/count_matrix.hpp"

namespace massign {

class ZeroPattern {
public:
    /// Builds the pattern of `matrix`. When zeros outnumber n^2/2 the pattern
    /// keeps the occupied cells and enumerates zeros as their complement.
    static ZeroPattern of(const CountMatrix& matrix);

    /// Explicit zero cells; duplicates are rejected.
    static ZeroPattern from_zero_cells(Index n, std::vector<std::pair<Index, Index>> zero_cells);

    Index size() const noexcept { return n_; }
    std::int64_t zero_count() const noexcept { return zero_count_; }
    bool stores_complement() const noexcept { return complement_; }

    bool is_zero(Index row, Index col) const;

    /// Smallest zero column >= from in `row`, or n when there is none.
    Index next_zero(Index row, Index from) const;

    /// Materialized zero cells, row-major.
    std::vector<std::pair<Index, Index>> zero_cells() const;

    /// Rows and columns without any zero cell.
    bool has_empty_line() const noexcept { return empty_line_; }

private:
    ZeroPattern() = default;
    void finish();

    Index n_ = 0;
    bool complement_ = false;
    bool empty_line_ = false;
    std::int64_t zero_count_ = 0;
    // Per-row sorted columns: the zero cells, or the occupied cells when
    // complement_ is set.
    std::vector<std::int64_t> row_ptr_;
    std::vector<Index> cols_;
};

struct ZeroMatching {
    Index size = 0;                  ///< matched rows, <= n
    std::vector<Index> col_of_row;   ///< -1 for unmatched rows
};

/// Hopcroft-Karp maximum matching on the zero cells, seeded greedily.
ZeroMatching max_zero_matching(const ZeroPattern& pattern);

/// True iff some permutation lies entirely on zero cells.
bool has_perfect_zero_matching(const ZeroPattern& pattern);
bool has_perfect_zero_matching(const CountMatrix& matrix);

/// edges / n - log n. Positive and growing values make a perfect matching
/// in a random bipartite graph with that many edges likely.
double er_margin(Index n, std::int64_t edge_count);

}  // namespace massign
