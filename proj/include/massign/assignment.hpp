#pragma once

// Exact extrema of S(sigma) = sum_i X[i][sigma(i)] over permutations sigma.

#include <stdexcept>
#include <string_view>
#include <vector>

#include "massign/count_matrix.hpp"

namespace massign {

enum class Objective { max, min };
enum class SolverId { oracle, dense, sparse, greedy };

std::string_view to_string(Objective objective) noexcept;
std::string_view to_string(SolverId solver) noexcept;

/// Bijection of [0, n); position i holds sigma(i).
class Permutation {
public:
    Permutation() = default;

    /// Throws std::invalid_argument unless mapping is a bijection of [0, size).
    explicit Permutation(std::vector<Index> mapping);

    static Permutation identity(Index n);

    Index size() const noexcept { return static_cast<Index>(mapping_.size()); }
    Index operator[](Index row) const { return mapping_[static_cast<std::size_t>(row)]; }
    const std::vector<Index>& mapping() const noexcept { return mapping_; }

    friend bool operator==(const Permutation&, const Permutation&) = default;

private:
    std::vector<Index> mapping_;
};

struct AssignmentSolution {
    Count value = 0;
    Permutation permutation;
    Objective objective = Objective::max;
    SolverId solver = SolverId::oracle;
};

/// sum_i X[i][sigma(i)].
Count evaluate(const CountMatrix& matrix, const Permutation& sigma);

/// Raised when a request exceeds a solver's size budget.
class InfeasibleRequest : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr Index kBruteforceMaxSide = 9;

/// Literal enumeration of all n! permutations in lexicographic order; the
/// first optimum wins. Throws InfeasibleRequest for n > 9.
AssignmentSolution solve_bruteforce(const CountMatrix& matrix, Objective objective);

/// Shortest augmenting paths with dual potentials, O(n^3). Works on the
/// counts directly: the max objective negates entries inside the kernel
/// (equivalently, reflects them against the matrix maximum).
AssignmentSolution solve_dense(const CountMatrix& matrix, Objective objective);

/// Maximum over occupied cells only: successive shortest paths on the
/// bipartite graph of occupied cells, where every row may also fall back to
/// a private zero-weight completion arc. Any matching found this way extends
/// to a permutation by filling remaining rows with unused columns, at zero
/// cost. Work scales with the occupied cell count rather than n^2.
AssignmentSolution solve_sparse_max(const CountMatrix& matrix);

}  // namespace massign
