#pragma once

// Square matrices of nonnegative integer counts with a known total mass.
//
// Indices are 0-based in the API; the text format and every user-facing
// printout are 1-based.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace massign {

using Index = std::int32_t;
using Count = std::int64_t;

struct Cell {
    Index row = 0;
    Index col = 0;
    Count count = 0;

    friend bool operator==(const Cell&, const Cell&) = default;
};

enum class Layout { dense, sparse };

/// Layout chosen for a matrix of side n holding m balls: sparse below n^2/4.
Layout preferred_layout(Index n, Count m) noexcept;

class CountMatrix {
public:
    /// All-zero matrix.
    static CountMatrix zeros(Index n, Layout layout = Layout::dense);

    /// Row-major n*n entries; negative entries are rejected.
    static CountMatrix from_dense(Index n, std::vector<Count> entries,
                                  Layout layout = Layout::dense);

    /// Cells may arrive in any order and may repeat; repeats are summed and
    /// zero counts are dropped.
    static CountMatrix from_cells(Index n, std::vector<Cell> cells, Layout layout);

    Index size() const noexcept { return n_; }
    Count total() const noexcept { return total_; }
    Layout layout() const noexcept { return layout_; }

    /// Cell probability of the underlying multinomial law, n^-2.
    double cell_probability() const noexcept;

    Count at(Index row, Index col) const;

    /// Number of cells holding at least one ball.
    std::int64_t occupied() const noexcept;

    /// Dense row (dense layout only).
    std::span<const Count> dense_row(Index row) const;

    /// Occupied columns of a row, ascending (sparse layout only).
    std::span<const Index> sparse_cols(Index row) const;
    std::span<const Count> sparse_counts(Index row) const;

    template <typename F>
    void for_each_in_row(Index row, F&& f) const {
        if (layout_ == Layout::dense) {
            const Count* r = dense_.data() + static_cast<std::size_t>(row) * n_;
            for (Index j = 0; j < n_; ++j) {
                if (r[j] != 0) f(j, r[j]);
            }
        } else {
            for (auto k = row_ptr_[row]; k < row_ptr_[row + 1]; ++k) f(cols_[k], counts_[k]);
        }
    }

    /// Occupied cells, row-major.
    std::vector<Cell> cells() const;

    /// Row-major copy of all n*n entries.
    std::vector<Count> to_dense_entries() const;

    CountMatrix with_layout(Layout layout) const;

    /// True iff both matrices hold the same entries (layout ignored).
    bool same_entries(const CountMatrix& other) const;

private:
    CountMatrix() = default;

    Index n_ = 0;
    Count total_ = 0;
    Layout layout_ = Layout::dense;
    std::vector<Count> dense_;
    std::vector<std::int64_t> row_ptr_;
    std::vector<Index> cols_;
    std::vector<Count> counts_;
};

/// Canonical text form: header "n m", then one "row col count" line per
/// occupied cell, 1-based, row-major.
void write_text(std::ostream& out, const CountMatrix& matrix);

/// Inverse of write_text. Throws std::invalid_argument on malformed input or
/// when the stated total disagrees with the cells.
CountMatrix read_text(std::istream& in);

}  // namespace massign
