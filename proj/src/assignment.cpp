#include "massign/assignment.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <queue>
#include <string>

#include "massign/kernels.hpp"

namespace massign {

std::string_view to_string(Objective objective) noexcept {
    return objective == Objective::max ? "max" : "min";
}

std::string_view to_string(SolverId solver) noexcept {
    switch (solver) {
        case SolverId::oracle: return "oracle";
        case SolverId::dense: return "dense";
        case SolverId::sparse: return "sparse";
        case SolverId::greedy: return "greedy";
    }
    return "unknown";
}

Permutation::Permutation(std::vector<Index> mapping) : mapping_(std::move(mapping)) {
    std::vector<bool> seen(mapping_.size(), false);
    for (Index j : mapping_) {
        if (j < 0 || static_cast<std::size_t>(j) >= mapping_.size() || seen[j]) {
            throw std::invalid_argument("permutation mapping is not a bijection");
        }
        seen[j] = true;
    }
}

Permutation Permutation::identity(Index n) {
    std::vector<Index> mapping(static_cast<std::size_t>(n));
    std::iota(mapping.begin(), mapping.end(), 0);
    return Permutation(std::move(mapping));
}

Count evaluate(const CountMatrix& matrix, const Permutation& sigma) {
    if (sigma.size() != matrix.size()) throw std::invalid_argument("permutation size mismatch");
    Count total = 0;
    for (Index i = 0; i < matrix.size(); ++i) total += matrix.at(i, sigma[i]);
    return total;
}

AssignmentSolution solve_bruteforce(const CountMatrix& matrix, Objective objective) {
    const Index n = matrix.size();
    if (n > kBruteforceMaxSide) {
        throw InfeasibleRequest("brute force enumeration limited to n <= " +
                                std::to_string(kBruteforceMaxSide));
    }
    const std::vector<Count> entries = matrix.to_dense_entries();
    std::vector<Index> sigma(static_cast<std::size_t>(n));
    std::iota(sigma.begin(), sigma.end(), 0);
    std::vector<Index> best_sigma = sigma;
    Count best = -1;
    do {
        Count s = 0;
        for (Index i = 0; i < n; ++i) s += entries[static_cast<std::size_t>(i) * n + sigma[i]];
        const bool better = best < 0 || (objective == Objective::max ? s > best : s < best);
        if (better) {
            best = s;
            best_sigma = sigma;
        }
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return {best, Permutation(std::move(best_sigma)), objective, SolverId::oracle};
}

AssignmentSolution solve_dense(const CountMatrix& matrix, Objective objective) {
    std::optional<CountMatrix> converted;
    if (matrix.layout() != Layout::dense) converted = matrix.with_layout(Layout::dense);
    const CountMatrix& a = converted ? *converted : matrix;

    const Index n = a.size();
    const auto size = static_cast<std::size_t>(n);
    const auto& kernel = kernels::active();
    const bool maximize = objective == Objective::max;

    // Costs are W - X for max and X for min, both nonnegative.
    Count reflect = 0;
    if (maximize) {
        for (Index i = 0; i < n; ++i) reflect = std::max(reflect, kernel.row_max(a.dense_row(i).data(), size));
    }

    constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
    std::vector<std::int64_t> row_pot(size, 0);
    std::vector<std::int64_t> col_pot(size, 0);
    std::vector<Index> row_of_col(size, -1);
    std::vector<std::int64_t> dist(size);
    std::vector<std::int64_t> via(size);
    std::vector<kernels::Mask> taken(size);
    std::vector<Index> scanned;
    scanned.reserve(size);

    for (Index row = 0; row < n; ++row) {
        std::fill(dist.begin(), dist.end(), kInf);
        std::fill(via.begin(), via.end(), -1);
        std::fill(taken.begin(), taken.end(), 0);
        scanned.clear();

        std::int64_t col = -1;  // -1 is the virtual source column holding `row`
        for (;;) {
            const Index from_row = col < 0 ? row : row_of_col[col];
            const std::int64_t base = (maximize ? reflect : 0) - row_pot[from_row];
            const kernels::ArgResult next =
                kernel.relax(a.dense_row(from_row).data(), base, maximize, col_pot.data(), dist.data(),
                             via.data(), taken.data(), col, size);
            const std::int64_t delta = next.value;
            row_pot[row] += delta;
            for (Index j : scanned) {
                row_pot[row_of_col[j]] += delta;
                col_pot[j] -= delta;
            }
            kernel.shift_untaken(dist.data(), taken.data(), delta, size);

            col = next.index;
            taken[col] = -1;
            scanned.push_back(static_cast<Index>(col));
            if (row_of_col[col] < 0) break;
        }
        while (col >= 0) {
            const std::int64_t prev = via[col];
            row_of_col[col] = prev < 0 ? row : row_of_col[prev];
            col = prev;
        }
    }

    std::vector<Index> mapping(size);
    for (Index j = 0; j < n; ++j) mapping[row_of_col[j]] = j;
    Permutation sigma(std::move(mapping));
    const Count value = evaluate(a, sigma);
    return {value, std::move(sigma), objective, SolverId::dense};
}

AssignmentSolution solve_sparse_max(const CountMatrix& matrix) {
    std::optional<CountMatrix> converted;
    if (matrix.layout() != Layout::sparse) converted = matrix.with_layout(Layout::sparse);
    const CountMatrix& a = converted ? *converted : matrix;
    const Index n = a.size();
    const auto size = static_cast<std::size_t>(n);

    Count reflect = 0;
    for (Index i = 0; i < n; ++i) {
        for (Count x : a.sparse_counts(i)) reflect = std::max(reflect, x);
    }

    // Column ids: real columns [0, n), completion column of row i is n + i.
    // Edge costs: W - X for occupied cells, W for the completion arc.
    constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
    std::vector<std::int64_t> row_pot(size, 0);
    std::vector<std::int64_t> col_pot(2 * size, 0);
    std::vector<Index> col_of_row(size, -1);
    std::vector<Index> row_of_col(2 * size, -1);
    std::vector<std::int64_t> col_dist(2 * size, kInf);
    std::vector<std::int64_t> row_dist(size, kInf);
    std::vector<Index> pred_row(2 * size, -1);
    std::vector<bool> settled(2 * size, false);
    std::vector<Index> touched_cols;
    std::vector<Index> reached_rows;

    using Entry = std::pair<std::int64_t, Index>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;

    for (Index source = 0; source < n; ++source) {
        auto scan_row = [&](Index r, std::int64_t d) {
            row_dist[r] = d;
            reached_rows.push_back(r);
            const auto cols = a.sparse_cols(r);
            const auto counts = a.sparse_counts(r);
            auto relax = [&](Index j, std::int64_t cost) {
                if (j == col_of_row[r] || settled[j]) return;
                const std::int64_t nd = d + cost + row_pot[r] - col_pot[j];
                if (nd < col_dist[j]) {
                    if (col_dist[j] == kInf) touched_cols.push_back(j);
                    col_dist[j] = nd;
                    pred_row[j] = r;
                    heap.emplace(nd, j);
                }
            };
            for (std::size_t k = 0; k < cols.size(); ++k) relax(cols[k], reflect - counts[k]);
            relax(n + r, reflect);
        };

        scan_row(source, 0);
        Index target = -1;
        std::int64_t target_dist = 0;
        while (!heap.empty()) {
            const auto [d, j] = heap.top();
            heap.pop();
            if (settled[j] || d != col_dist[j]) continue;
            settled[j] = true;
            if (row_of_col[j] < 0) {
                target = j;
                target_dist = d;
                break;
            }
            scan_row(row_of_col[j], d);
        }

        for (Index j : touched_cols) {
            if (settled[j] && col_dist[j] < target_dist) col_pot[j] -= target_dist - col_dist[j];
        }
        for (Index r : reached_rows) {
            if (row_dist[r] < target_dist) row_pot[r] -= target_dist - row_dist[r];
        }

        for (Index j = target; j >= 0;) {
            const Index r = pred_row[j];
            const Index previous = col_of_row[r];
            col_of_row[r] = j;
            row_of_col[j] = r;
            j = r == source ? -1 : previous;
        }

        for (Index j : touched_cols) {
            col_dist[j] = kInf;
            settled[j] = false;
        }
        for (Index r : reached_rows) row_dist[r] = kInf;
        touched_cols.clear();
        reached_rows.clear();
        heap = {};
    }

    // Rows parked on completion arcs take the unused real columns in order.
    std::vector<Index> mapping(size, -1);
    std::vector<bool> col_used(size, false);
    for (Index i = 0; i < n; ++i) {
        if (col_of_row[i] < n) {
            mapping[i] = col_of_row[i];
            col_used[col_of_row[i]] = true;
        }
    }
    Index next_free = 0;
    for (Index i = 0; i < n; ++i) {
        if (mapping[i] >= 0) continue;
        while (col_used[next_free]) ++next_free;
        mapping[i] = next_free;
        col_used[next_free] = true;
    }
    Permutation sigma(std::move(mapping));
    const Count value = evaluate(a, sigma);
    return {value, std::move(sigma), Objective::max, SolverId::sparse};
}

}  // namespace massign
