#include "massign/greedy.hpp"

#include <algorithm>
#include <numeric>

#include "massign/kernels.hpp"

namespace massign {

namespace {

// Smallest untaken column >= j, or n. Path-halving union-find over "next".
class FreeColumns {
public:
    explicit FreeColumns(Index n) : next_(static_cast<std::size_t>(n) + 1) {
        std::iota(next_.begin(), next_.end(), 0);
    }

    Index find(Index j) {
        while (next_[j] != j) {
            next_[j] = next_[next_[j]];
            j = next_[j];
        }
        return j;
    }

    void take(Index j) { next_[j] = j + 1; }

private:
    std::vector<Index> next_;
};

bool occupied_in(std::span<const Index> cols, Index j) {
    return std::binary_search(cols.begin(), cols.end(), j);
}

AssignmentSolution greedy_dense(const CountMatrix& a, Objective objective) {
    const auto size = static_cast<std::size_t>(a.size());
    const auto& kernel = kernels::active();
    std::vector<kernels::Mask> taken(size, 0);
    std::vector<Index> mapping(size);
    for (Index i = 0; i < a.size(); ++i) {
        const auto row = a.dense_row(i).data();
        const auto pick = objective == Objective::max ? kernel.masked_argmax(row, taken.data(), size)
                                                      : kernel.masked_argmin(row, taken.data(), size);
        mapping[i] = static_cast<Index>(pick.index);
        taken[pick.index] = -1;
    }
    return {0, Permutation(std::move(mapping)), objective, SolverId::greedy};
}

AssignmentSolution greedy_sparse(const CountMatrix& a, Objective objective) {
    const Index n = a.size();
    FreeColumns free(n);
    std::vector<bool> taken(static_cast<std::size_t>(n), false);
    std::vector<Index> mapping(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) {
        const auto cols = a.sparse_cols(i);
        const auto counts = a.sparse_counts(i);
        Index pick = -1;
        if (objective == Objective::max) {
            Count best = 0;
            for (std::size_t k = 0; k < cols.size(); ++k) {
                if (!taken[cols[k]] && counts[k] > best) {
                    best = counts[k];
                    pick = cols[k];
                }
            }
            if (pick < 0) pick = free.find(0);
        } else {
            Index c = free.find(0);
            while (c < n && occupied_in(cols, c)) c = free.find(c + 1);
            if (c < n) {
                pick = c;
            } else {
                // Every remaining column is occupied in this row.
                Count best = 0;
                for (std::size_t k = 0; k < cols.size(); ++k) {
                    if (!taken[cols[k]] && (pick < 0 || counts[k] < best)) {
                        best = counts[k];
                        pick = cols[k];
                    }
                }
            }
        }
        mapping[i] = pick;
        taken[pick] = true;
        free.take(pick);
    }
    return {0, Permutation(std::move(mapping)), objective, SolverId::greedy};
}

}  // namespace

AssignmentSolution greedy_permutation(const CountMatrix& matrix, Objective objective) {
    AssignmentSolution out = matrix.layout() == Layout::dense ? greedy_dense(matrix, objective)
                                                              : greedy_sparse(matrix, objective);
    out.value = evaluate(matrix, out.permutation);
    return out;
}

Count row_max_sum(const CountMatrix& matrix) {
    Count total = 0;
    if (matrix.layout() == Layout::dense) {
        const auto& kernel = kernels::active();
        for (Index i = 0; i < matrix.size(); ++i) {
            const auto row = matrix.dense_row(i);
            total += kernel.row_max(row.data(), row.size());
        }
        return total;
    }
    for (Index i = 0; i < matrix.size(); ++i) {
        const auto counts = matrix.sparse_counts(i);
        if (!counts.empty()) total += *std::max_element(counts.begin(), counts.end());
    }
    return total;
}

Bracket bracket_max(const CountMatrix& matrix) {
    return {greedy_permutation(matrix, Objective::max).value, row_max_sum(matrix)};
}

}  // namespace massign
