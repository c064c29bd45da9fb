#include "massign/zero_structure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace massign {

ZeroPattern ZeroPattern::of(const CountMatrix& matrix) {
    ZeroPattern out;
    out.n_ = matrix.size();
    const auto cells = static_cast<std::int64_t>(out.n_) * out.n_;
    out.zero_count_ = cells - matrix.occupied();
    out.complement_ = out.zero_count_ > cells / 2;
    out.row_ptr_.assign(static_cast<std::size_t>(out.n_) + 1, 0);
    for (Index i = 0; i < out.n_; ++i) {
        if (out.complement_) {
            matrix.for_each_in_row(i, [&](Index j, Count) { out.cols_.push_back(j); });
        } else {
            std::vector<Index> occupied;
            matrix.for_each_in_row(i, [&](Index j, Count) { occupied.push_back(j); });
            auto it = occupied.begin();
            for (Index j = 0; j < out.n_; ++j) {
                if (it != occupied.end() && *it == j) {
                    ++it;
                    continue;
                }
                out.cols_.push_back(j);
            }
        }
        out.row_ptr_[static_cast<std::size_t>(i) + 1] = static_cast<std::int64_t>(out.cols_.size());
    }
    out.finish();
    return out;
}

ZeroPattern ZeroPattern::from_zero_cells(Index n, std::vector<std::pair<Index, Index>> zero_cells) {
    if (n < 1) throw std::invalid_argument("matrix side must be positive");
    std::sort(zero_cells.begin(), zero_cells.end());
    if (std::adjacent_find(zero_cells.begin(), zero_cells.end()) != zero_cells.end()) {
        throw std::invalid_argument("duplicate zero cell");
    }
    ZeroPattern out;
    out.n_ = n;
    out.zero_count_ = static_cast<std::int64_t>(zero_cells.size());
    out.row_ptr_.assign(static_cast<std::size_t>(n) + 1, 0);
    for (const auto& [row, col] : zero_cells) {
        if (row < 0 || row >= n || col < 0 || col >= n) throw std::out_of_range("zero cell outside matrix");
        out.cols_.push_back(col);
        ++out.row_ptr_[static_cast<std::size_t>(row) + 1];
    }
    for (std::size_t i = 1; i < out.row_ptr_.size(); ++i) out.row_ptr_[i] += out.row_ptr_[i - 1];
    out.finish();
    return out;
}

void ZeroPattern::finish() {
    // A row or column with no zero cell rules out a zero permutation at once.
    std::vector<std::int64_t> per_col(static_cast<std::size_t>(n_), 0);
    for (Index c : cols_) ++per_col[c];
    empty_line_ = false;
    for (Index i = 0; i < n_ && !empty_line_; ++i) {
        const auto stored = row_ptr_[i + 1] - row_ptr_[i];
        empty_line_ = complement_ ? stored == n_ : stored == 0;
    }
    for (Index j = 0; j < n_ && !empty_line_; ++j) {
        empty_line_ = complement_ ? per_col[j] == n_ : per_col[j] == 0;
    }
}

bool ZeroPattern::is_zero(Index row, Index col) const {
    const auto first = cols_.begin() + row_ptr_[row];
    const auto last = cols_.begin() + row_ptr_[row + 1];
    const bool listed = std::binary_search(first, last, col);
    return complement_ ? !listed : listed;
}

Index ZeroPattern::next_zero(Index row, Index from) const {
    if (from >= n_) return n_;
    const auto first = cols_.begin() + row_ptr_[row];
    const auto last = cols_.begin() + row_ptr_[row + 1];
    auto it = std::lower_bound(first, last, from);
    if (!complement_) return it == last ? n_ : *it;
    // Skip the run of occupied columns starting at `from`.
    Index c = from;
    while (it != last && *it == c) {
        ++it;
        ++c;
    }
    return c < n_ ? c : n_;
}

std::vector<std::pair<Index, Index>> ZeroPattern::zero_cells() const {
    std::vector<std::pair<Index, Index>> out;
    out.reserve(static_cast<std::size_t>(zero_count_));
    for (Index i = 0; i < n_; ++i) {
        for (Index c = next_zero(i, 0); c < n_; c = next_zero(i, c + 1)) out.emplace_back(i, c);
    }
    return out;
}

ZeroMatching max_zero_matching(const ZeroPattern& pattern) {
    const Index n = pattern.size();
    const auto size = static_cast<std::size_t>(n);
    ZeroMatching out;
    out.col_of_row.assign(size, -1);
    std::vector<Index> row_of_col(size, -1);

    // Greedy seed: each row takes its first zero column that is still free.
    // `next_free` skips taken columns in amortized constant time.
    std::vector<Index> next_free(size + 1);
    std::iota(next_free.begin(), next_free.end(), 0);
    auto find_free = [&](Index j) {
        while (next_free[j] != j) {
            next_free[j] = next_free[next_free[j]];
            j = next_free[j];
        }
        return j;
    };
    for (Index r = 0; r < n; ++r) {
        Index c = find_free(0);
        while (c < n && !pattern.is_zero(r, c)) {
            c = pattern.next_zero(r, c + 1);
            if (c < n) c = find_free(c);
        }
        if (c < n) {
            out.col_of_row[r] = c;
            row_of_col[c] = r;
            next_free[c] = c + 1;
            ++out.size;
        }
    }

    constexpr Index kUnreached = std::numeric_limits<Index>::max();
    std::vector<Index> layer(size);
    std::vector<Index> queue;
    std::vector<Index> cursor(size);
    std::vector<Index> stack;
    queue.reserve(size);

    while (out.size < n) {
        // BFS layers from all free rows.
        queue.clear();
        for (Index r = 0; r < n; ++r) {
            if (out.col_of_row[r] < 0) {
                layer[r] = 0;
                queue.push_back(r);
            } else {
                layer[r] = kUnreached;
            }
        }
        Index free_layer = kUnreached;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const Index r = queue[head];
            if (layer[r] >= free_layer) break;
            for (Index c = pattern.next_zero(r, 0); c < n; c = pattern.next_zero(r, c + 1)) {
                const Index owner = row_of_col[c];
                if (owner < 0) {
                    free_layer = std::min(free_layer, layer[r] + 1);
                } else if (layer[owner] == kUnreached) {
                    layer[owner] = layer[r] + 1;
                    queue.push_back(owner);
                }
            }
        }
        if (free_layer == kUnreached) break;

        // Layered DFS, iterative; cursor[r] remembers the next column to try.
        std::fill(cursor.begin(), cursor.end(), 0);
        Index augmented = 0;
        for (Index root = 0; root < n; ++root) {
            if (out.col_of_row[root] >= 0 || layer[root] != 0) continue;
            stack.assign(1, root);
            while (!stack.empty()) {
                const Index r = stack.back();
                const Index c = pattern.next_zero(r, cursor[r]);
                if (c >= n) {
                    layer[r] = kUnreached;  // dead end for this phase
                    stack.pop_back();
                    continue;
                }
                cursor[r] = c + 1;
                const Index owner = row_of_col[c];
                if (owner < 0) {
                    if (layer[r] + 1 != free_layer) continue;
                    // Flip the path root .. r .. c.
                    Index col = c;
                    for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
                        const Index row = *it;
                        const Index previous = out.col_of_row[row];
                        out.col_of_row[row] = col;
                        row_of_col[col] = row;
                        col = previous;
                    }
                    ++augmented;
                    stack.clear();
                } else if (layer[owner] == layer[r] + 1) {
                    stack.push_back(owner);
                }
            }
        }
        if (augmented == 0) break;
        out.size += augmented;
    }
    return out;
}

bool has_perfect_zero_matching(const ZeroPattern& pattern) {
    if (pattern.has_empty_line()) return false;
    return max_zero_matching(pattern).size == pattern.size();
}

bool has_perfect_zero_matching(const CountMatrix& matrix) {
    return has_perfect_zero_matching(ZeroPattern::of(matrix));
}

double er_margin(Index n, std::int64_t edge_count) {
    if (n < 1) throw std::invalid_argument("matrix side must be positive");
    return static_cast<double>(edge_count) / n - std::log(static_cast<double>(n));
}

}  // namespace massign
