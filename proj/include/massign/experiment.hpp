#pragma once

// Seeded Monte Carlo experiments: sample -> solve -> aggregate.
//
// Trial t at side n draws its matrix from SeedSpec{derive_seed(master_seed, n), t}.
// Trials may run on any number of threads; every per-trial result is stored
// by trial index and aggregated in index order, so output is identical for
// any thread count.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "massign/count_matrix.hpp"
#include "massign/regime.hpp"
#include "massign/stats.hpp"

namespace massign {

enum class Statistic {
    max_exact,
    min_exact,
    greedy_max,
    greedy_min,
    row_max_sum,
    bracket,
    min_is_zero,
    fresh_throws,
};

std::string_view to_string(Statistic statistic) noexcept;
Statistic parse_statistic(std::string_view name);
/// Comma-separated list, e.g. "max_exact,min_is_zero".
std::vector<Statistic> parse_statistics(std::string_view list);

enum class SolverMode { exact, bracket, automatic };

std::string_view to_string(SolverMode mode) noexcept;
SolverMode parse_solver_mode(std::string_view name);

/// Largest side the dense O(n^3) solver is asked to handle.
inline constexpr Index kDenseSolverBudget = 2048;

struct ExperimentPlan {
    RegimeSpec spec;
    std::optional<Count> m;  ///< overrides the family's ball-count rule
    std::vector<Index> n_list;
    std::int64_t trials = 1;
    std::uint64_t master_seed = 0;
    std::vector<Statistic> statistics;
    SolverMode solver_mode = SolverMode::automatic;
    unsigned threads = 0;  ///< 0: hardware concurrency
};

/// Throws std::invalid_argument for an empty or unsorted n list, trials < 1,
/// no statistics, or a missing m with the explicit family.
void validate(const ExperimentPlan& plan);

/// One output row: a statistic aggregated over all trials at one side.
struct StatisticRow {
    std::string statistic;
    stats::Moments moments;
    Prediction prediction;
    std::optional<double> ratio;  ///< mean / point prediction
    std::optional<double> zero_fraction;
    std::optional<stats::Interval> zero_ci;
};

struct ExperimentSummary {
    RegimeSpec spec;
    Index n = 0;
    Count m = 0;
    std::int64_t trials = 0;
    std::uint64_t seed = 0;
    std::vector<StatisticRow> rows;

    const StatisticRow* find(std::string_view statistic) const;
};

/// A per-trial coherence check failed (e.g. greedy above the exact max).
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Runs every trial of every side in the plan. Throws InfeasibleRequest when
/// solver_mode is exact and a requested exact statistic exceeds the solver
/// budget at some side.
std::vector<ExperimentSummary> run_trials(const ExperimentPlan& plan);

struct ZeroProbability {
    Index n = 0;
    Count m = 0;
    std::int64_t trials = 0;
    std::int64_t zeros = 0;
    double fraction = 0;
    stats::Interval ci;
};

/// Fraction of trials whose minimum is zero, decided by zero-cell matching only.
ZeroProbability zero_prob(const RegimeSpec& spec, std::optional<Count> m, Index n, std::int64_t trials,
                          std::uint64_t seed, unsigned threads = 0);

struct StepLawResult {
    stats::ChiSquareResult test;
    std::int64_t samples = 0;
    double mean_greedy = 0;  ///< mean of the step-i greedy pick
    double mean_prefix = 0;  ///< mean of the max over the first n - i + 1 entries
};

/// Compares the law of the greedy pick at step `step` (1-based row) with the
/// law of the maximum over the first n - step + 1 entries of the same row of
/// an independent matrix. Requires n <= 6, m <= 30, 1 <= step <= n.
StepLawResult lemma1_test(Index n, Count m, Index step, std::int64_t samples, std::uint64_t seed);

}  // namespace massign
