#pragma once

// Sparsity regimes of the multinomial assignment process and the leading-order
// values they predict for E max and E min.
//
// With p = n^-2 the regimes are separated by the behaviour of mp / log n:
//
//   quasi-Gaussian    mp / log n -> infinity          E max ~ E min ~ m / n
//   critical          mp / log n -> c                 E max ~ c H*(c) n log n
//                                                     E min ~ c H~*(c) n log n  (c > 1)
//                                                     min = 0 whp               (c < 1)
//   quasi-Poissonian  mp / log n -> 0, mp >> n^-d     E max ~ n log n / log(log n / mp)
//   rather sparse     mp = c n^-a, 0 < a < 1          E max ~ k n, 1/(k+1) < a < 1/k
//                                                     (k-1) n .. k n when a = 1/k
//   very sparse       1 << m << n                     E max ~ m
//
// H*(c) > 1 and H~*(c) in (0, 1) solve H log H - (H - 1) = 1/c.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "massign/count_matrix.hpp"

namespace massign {

enum class Family { quasi_gaussian, critical, quasi_poissonian, rather_sparse, very_sparse, explicit_m };

std::string_view to_string(Family family) noexcept;
/// Accepts the names printed by to_string; throws std::invalid_argument otherwise.
Family parse_family(std::string_view name);

/// Family plus parameters. `c` is the critical constant (critical), the
/// amplitude of mp = c n^-a (rather sparse), or a scale factor on the default
/// ball-count rule for the other families.
struct RegimeSpec {
    Family family = Family::explicit_m;
    double c = 1.0;
    double a = 0.0;
};

/// Throws std::invalid_argument when parameters fall outside the family's domain.
void validate(const RegimeSpec& spec);

/// Ball count for side n (n >= 2), rounded to nearest, at least 1:
///   quasi-Gaussian    c n^4
///   critical          c n^2 log n
///   quasi-Poissonian  c n^2            (mp = c)
///   rather sparse     c n^(2-a)
///   very sparse       c n^(1/2)
/// The explicit family has no rule and throws std::invalid_argument.
Count m_of_n(const RegimeSpec& spec, Index n);

class NoLowerBranchSolution : public std::domain_error {
public:
    NoLowerBranchSolution()
        : std::domain_error("no lower-branch solution: H log H - (H - 1) = 1/c has no root in (0, 1) "
                            "for c <= 1 (zero-minimum regime)") {}
};

enum class Branch { upper, lower };

struct HStarSolution {
    double c = 0;
    double h = 0;
    Branch branch = Branch::upper;
    double residual = 0;  ///< |h log h - (h - 1) - 1/c|
};

/// Root of H log H - (H - 1) = 1/c with H > 1; c > 0.
HStarSolution h_star(double c);

/// Root in (0, 1); requires c > 1, otherwise throws NoLowerBranchSolution.
HStarSolution h_tilde_star(double c);

/// H log H - (H - 1), accurate near H = 1.
double entropy_gap(double h) noexcept;

enum class PredictionKind { point, interval, zero_whp, not_covered };
enum class Theorem { none, t1, t2, t3, t4, t5, t6 };

std::string_view to_string(PredictionKind kind) noexcept;
std::string_view to_string(Theorem theorem) noexcept;

struct Prediction {
    PredictionKind kind = PredictionKind::not_covered;
    double value = 0;  ///< point predictions
    double low = 0;    ///< interval predictions
    double high = 0;
    Theorem theorem = Theorem::none;
    Index n = 0;
    Count m = 0;
};

/// k with 1/(k+1) < a < 1/k, or k = 1/a when a is the reciprocal of an
/// integer (the irregular case).
struct SparseOrder {
    int k = 0;
    bool irregular = false;
};
SparseOrder sparse_order(double a);

/// Leading-order E max for side n. `m` overrides the family's ball-count rule
/// (and is required for the explicit family).
Prediction predict_max(const RegimeSpec& spec, Index n, std::optional<Count> m = std::nullopt);
Prediction predict_min(const RegimeSpec& spec, Index n, std::optional<Count> m = std::nullopt);

/// Numerical check that the m_of_n sequence follows the family's defining
/// limit over a range of sides. Advisory only.
struct ConsistencyRow {
    Index n = 0;
    Count m = 0;
    double mp = 0;
    double mp_over_log_n = 0;
    double metric = 0;     ///< the family-specific quantity being checked
    double deviation = 0;  ///< relative deviation from the target, where one exists
};

struct ConsistencyReport {
    std::string criterion;
    std::vector<ConsistencyRow> rows;
    double max_relative_deviation = 0;
    bool ok = false;
};

ConsistencyReport classify_consistency(const RegimeSpec& spec, const std::vector<Index>& n_range);

}  // namespace massign
