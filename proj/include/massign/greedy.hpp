#pragma once

#include "massign/assignment.hpp"
#include "massign/count_matrix.hpp"

namespace massign {

/// Row-by-row greedy permutation: row i (in order 0..n-1) takes its best
/// column among those not taken by earlier rows, lowest column on ties.
/// For Objective::max the value lower-bounds the exact maximum; for
/// Objective::min it upper-bounds the exact minimum.
AssignmentSolution greedy_permutation(const CountMatrix& matrix, Objective objective);

/// sum_i max_j X[i][j]; upper-bounds the exact maximum pathwise.
Count row_max_sum(const CountMatrix& matrix);

struct Bracket {
    Count lower = 0;  ///< greedy maximum
    Count upper = 0;  ///< row-max sum

    friend bool operator==(const Bracket&, const Bracket&) = default;
};

/// lower <= exact max <= upper, without solving an assignment problem.
Bracket bracket_max(const CountMatrix& matrix);

}  // namespace massign
