#include "massign/count_matrix.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace massign {

namespace {

void check_side(Index n) {
    if (n < 1) throw std::invalid_argument("matrix side must be positive");
}

void check_cell(Index n, Index row, Index col) {
    if (row < 0 || row >= n || col < 0 || col >= n) {
        throw std::out_of_range("cell (" + std::to_string(row) + ", " + std::to_string(col) +
                                ") outside a " + std::to_string(n) + "x" + std::to_string(n) +
                                " matrix");
    }
}

}  // namespace

Layout preferred_layout(Index n, Count m) noexcept {
    const auto cells = static_cast<long double>(n) * n;
    return static_cast<long double>(m) < cells / 4 ? Layout::sparse : Layout::dense;
}

CountMatrix CountMatrix::zeros(Index n, Layout layout) {
    check_side(n);
    CountMatrix out;
    out.n_ = n;
    out.layout_ = layout;
    if (layout == Layout::dense) {
        out.dense_.assign(static_cast<std::size_t>(n) * n, 0);
    } else {
        out.row_ptr_.assign(static_cast<std::size_t>(n) + 1, 0);
    }
    return out;
}

CountMatrix CountMatrix::from_dense(Index n, std::vector<Count> entries, Layout layout) {
    check_side(n);
    if (entries.size() != static_cast<std::size_t>(n) * n) {
        throw std::invalid_argument("dense entry count does not match n*n");
    }
    Count total = 0;
    for (Count x : entries) {
        if (x < 0) throw std::invalid_argument("counts must be nonnegative");
        total += x;
    }
    CountMatrix out;
    out.n_ = n;
    out.total_ = total;
    out.layout_ = Layout::dense;
    out.dense_ = std::move(entries);
    if (layout == Layout::sparse) return out.with_layout(Layout::sparse);
    return out;
}

CountMatrix CountMatrix::from_cells(Index n, std::vector<Cell> cells, Layout layout) {
    check_side(n);
    for (const Cell& c : cells) {
        check_cell(n, c.row, c.col);
        if (c.count < 0) throw std::invalid_argument("counts must be nonnegative");
    }
    CountMatrix out;
    out.n_ = n;
    out.layout_ = layout;
    if (layout == Layout::dense) {
        out.dense_.assign(static_cast<std::size_t>(n) * n, 0);
        for (const Cell& c : cells) {
            out.dense_[static_cast<std::size_t>(c.row) * n + c.col] += c.count;
            out.total_ += c.count;
        }
        return out;
    }

    std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    out.row_ptr_.assign(static_cast<std::size_t>(n) + 1, 0);
    out.cols_.reserve(cells.size());
    out.counts_.reserve(cells.size());
    Index last_row = -1;
    Index last_col = -1;
    for (const Cell& c : cells) {
        if (c.count == 0) continue;
        out.total_ += c.count;
        if (c.row == last_row && c.col == last_col) {
            out.counts_.back() += c.count;
            continue;
        }
        out.cols_.push_back(c.col);
        out.counts_.push_back(c.count);
        ++out.row_ptr_[static_cast<std::size_t>(c.row) + 1];
        last_row = c.row;
        last_col = c.col;
    }
    for (std::size_t i = 1; i < out.row_ptr_.size(); ++i) out.row_ptr_[i] += out.row_ptr_[i - 1];
    return out;
}

double CountMatrix::cell_probability() const noexcept {
    return 1.0 / (static_cast<double>(n_) * static_cast<double>(n_));
}

Count CountMatrix::at(Index row, Index col) const {
    check_cell(n_, row, col);
    if (layout_ == Layout::dense) return dense_[static_cast<std::size_t>(row) * n_ + col];
    const auto first = cols_.begin() + row_ptr_[row];
    const auto last = cols_.begin() + row_ptr_[row + 1];
    const auto it = std::lower_bound(first, last, col);
    if (it == last || *it != col) return 0;
    return counts_[static_cast<std::size_t>(it - cols_.begin())];
}

std::int64_t CountMatrix::occupied() const noexcept {
    if (layout_ == Layout::sparse) return static_cast<std::int64_t>(cols_.size());
    return std::count_if(dense_.begin(), dense_.end(), [](Count x) { return x != 0; });
}

std::span<const Count> CountMatrix::dense_row(Index row) const {
    if (layout_ != Layout::dense) throw std::logic_error("dense_row on a sparse matrix");
    return {dense_.data() + static_cast<std::size_t>(row) * n_, static_cast<std::size_t>(n_)};
}

std::span<const Index> CountMatrix::sparse_cols(Index row) const {
    if (layout_ != Layout::sparse) throw std::logic_error("sparse_cols on a dense matrix");
    const auto first = static_cast<std::size_t>(row_ptr_[row]);
    return {cols_.data() + first, static_cast<std::size_t>(row_ptr_[row + 1]) - first};
}

std::span<const Count> CountMatrix::sparse_counts(Index row) const {
    if (layout_ != Layout::sparse) throw std::logic_error("sparse_counts on a dense matrix");
    const auto first = static_cast<std::size_t>(row_ptr_[row]);
    return {counts_.data() + first, static_cast<std::size_t>(row_ptr_[row + 1]) - first};
}

std::vector<Cell> CountMatrix::cells() const {
    std::vector<Cell> out;
    for (Index i = 0; i < n_; ++i) {
        for_each_in_row(i, [&](Index j, Count x) { out.push_back({i, j, x}); });
    }
    return out;
}

std::vector<Count> CountMatrix::to_dense_entries() const {
    if (layout_ == Layout::dense) return dense_;
    std::vector<Count> out(static_cast<std::size_t>(n_) * n_, 0);
    for (Index i = 0; i < n_; ++i) {
        for_each_in_row(i, [&](Index j, Count x) { out[static_cast<std::size_t>(i) * n_ + j] = x; });
    }
    return out;
}

CountMatrix CountMatrix::with_layout(Layout layout) const {
    if (layout == layout_) return *this;
    if (layout == Layout::dense) return from_dense(n_, to_dense_entries());
    return from_cells(n_, cells(), Layout::sparse);
}

bool CountMatrix::same_entries(const CountMatrix& other) const {
    return n_ == other.n_ && total_ == other.total_ && cells() == other.cells();
}

void write_text(std::ostream& out, const CountMatrix& matrix) {
    out << matrix.size() << ' ' << matrix.total() << '\n';
    for (Index i = 0; i < matrix.size(); ++i) {
        matrix.for_each_in_row(i, [&](Index j, Count x) {
            out << (i + 1) << ' ' << (j + 1) << ' ' << x << '\n';
        });
    }
}

CountMatrix read_text(std::istream& in) {
    long long n = 0;
    long long total = 0;
    if (!(in >> n >> total) || n < 1 || total < 0) {
        throw std::invalid_argument("matrix text: bad header");
    }
    std::vector<Cell> cells;
    long long row = 0;
    long long col = 0;
    long long count = 0;
    while (in >> row >> col >> count) {
        if (row < 1 || row > n || col < 1 || col > n || count < 1) {
            throw std::invalid_argument("matrix text: bad cell line");
        }
        cells.push_back({static_cast<Index>(row - 1), static_cast<Index>(col - 1), count});
    }
    if (!in.eof()) throw std::invalid_argument("matrix text: trailing garbage");
    const auto side = static_cast<Index>(n);
    CountMatrix out = CountMatrix::from_cells(side, std::move(cells), preferred_layout(side, total));
    if (out.total() != total) throw std::invalid_argument("matrix text: total mismatch");
    return out;
}

}  // namespace massign
