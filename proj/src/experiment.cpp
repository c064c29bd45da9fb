#include "massign/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <thread>

#include "massign/assignment.hpp"
#include "massign/greedy.hpp"
#include "massign/sampling.hpp"
#include "massign/zero_structure.hpp"

namespace massign {

namespace {

constexpr Statistic kAllStatistics[] = {
    Statistic::max_exact,   Statistic::min_exact, Statistic::greedy_max,  Statistic::greedy_min,
    Statistic::row_max_sum, Statistic::bracket,   Statistic::min_is_zero, Statistic::fresh_throws,
};

// Runs body(i) for i in [0, count) on up to `threads` threads. If any call
// throws, the exception of the lowest failing index is rethrown.
template <typename Body>
void parallel_for(std::int64_t count, unsigned threads, Body body) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::int64_t>(threads, std::max<std::int64_t>(count, 1)));

    std::atomic<std::int64_t> next{0};
    std::mutex error_lock;
    std::int64_t error_index = count;
    std::exception_ptr error;
    auto worker = [&] {
        for (std::int64_t i = next++; i < count; i = next++) {
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(error_lock);
                if (i < error_index) {
                    error_index = i;
                    error = std::current_exception();
                }
            }
        }
    };
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    if (error) std::rethrow_exception(error);
}

bool wants(const std::vector<Statistic>& list, Statistic s) {
    return std::find(list.begin(), list.end(), s) != list.end();
}

struct Routing {
    bool max_exact = false;
    bool max_bracket = false;  // bracket rows stand in for (or accompany) max_exact
    bool min_exact = false;
    bool min_greedy_substitute = false;
};

// Exact max: sparse solver whenever the matrix is stored sparse, dense solver
// up to the budget. Exact min: dense solver up to the budget.
Routing route(const ExperimentPlan& plan, Index n, Count m) {
    const bool sparse = preferred_layout(n, m) == Layout::sparse;
    const bool max_feasible = sparse || n <= kDenseSolverBudget;
    const bool min_feasible = n <= kDenseSolverBudget;
    const bool want_max = wants(plan.statistics, Statistic::max_exact);
    const bool want_min = wants(plan.statistics, Statistic::min_exact);

    Routing r;
    r.max_bracket = wants(plan.statistics, Statistic::bracket);
    switch (plan.solver_mode) {
        case SolverMode::exact:
            if ((want_max && !max_feasible) || (want_min && !min_feasible)) {
                throw InfeasibleRequest("exact solve at n = " + std::to_string(n) +
                                        " exceeds the dense solver budget (n <= " +
                                        std::to_string(kDenseSolverBudget) + "); use bracket");
            }
            r.max_exact = want_max;
            r.min_exact = want_min;
            break;
        case SolverMode::bracket:
            r.max_bracket = r.max_bracket || want_max;
            r.min_greedy_substitute = want_min;
            break;
        case SolverMode::automatic:
            r.max_exact = want_max && max_feasible;
            r.max_bracket = r.max_bracket || (want_max && !max_feasible);
            r.min_exact = want_min && min_feasible;
            r.min_greedy_substitute = want_min && !min_feasible;
            break;
    }
    return r;
}

struct TrialRecord {
    std::optional<Count> max_exact;
    std::optional<Count> min_exact;
    std::optional<Count> greedy_max;
    std::optional<Count> greedy_min;
    std::optional<Count> row_max_sum;
    std::optional<Count> bracket_lower;
    std::optional<Count> bracket_upper;
    std::optional<Count> fresh_throws;
    std::optional<bool> min_is_zero;
};

[[noreturn]] void violation(Index n, std::int64_t trial, const std::string& what) {
    throw InvariantViolation("trial " + std::to_string(trial) + " at n = " + std::to_string(n) + ": " + what);
}

void check_coherence(const TrialRecord& r, Index n, Count m, std::int64_t trial) {
    const Count ceil_avg = (m + n - 1) / n;
    const Count floor_avg = m / n;
    if (r.max_exact) {
        const Count mx = *r.max_exact;
        if (mx < ceil_avg) violation(n, trial, "max below ceil(m/n)");
        if (mx > m) violation(n, trial, "max above m");
        if (r.row_max_sum && mx > *r.row_max_sum) violation(n, trial, "max above row-max sum");
        if (r.greedy_max && *r.greedy_max > mx) violation(n, trial, "greedy max above exact max");
        if (r.bracket_lower && (*r.bracket_lower > mx || mx > *r.bracket_upper)) {
            violation(n, trial, "exact max outside bracket");
        }
        if (r.fresh_throws && *r.fresh_throws > mx) violation(n, trial, "fresh throws above exact max");
    }
    if (r.min_exact) {
        const Count mn = *r.min_exact;
        if (mn > floor_avg) violation(n, trial, "min above floor(m/n)");
        if (r.greedy_min && *r.greedy_min < mn) violation(n, trial, "greedy min below exact min");
        if (r.min_is_zero && *r.min_is_zero != (mn == 0)) {
            violation(n, trial, "zero matching disagrees with exact min");
        }
        if (r.max_exact && mn > *r.max_exact) violation(n, trial, "min above max");
    }
    if (r.greedy_max && r.row_max_sum && *r.greedy_max > *r.row_max_sum) {
        violation(n, trial, "greedy max above row-max sum");
    }
    if (r.bracket_lower && *r.bracket_lower > *r.bracket_upper) violation(n, trial, "inverted bracket");
}

TrialRecord run_one(const ExperimentPlan& plan, const Routing& routing, Index n, Count m, std::int64_t trial) {
    const bool want_fresh = wants(plan.statistics, Statistic::fresh_throws);
    const SeedSpec seed{derive_seed(plan.master_seed, static_cast<std::uint64_t>(n)),
                        static_cast<std::uint64_t>(trial)};
    const SampledMatrix sample = sample_multinomial(n, m, seed, want_fresh);
    const CountMatrix& x = sample.matrix;
    if (x.total() != m) violation(n, trial, "sampled mass differs from m");

    TrialRecord r;
    if (routing.max_exact) {
        r.max_exact = x.layout() == Layout::sparse ? solve_sparse_max(x).value : solve_dense(x, Objective::max).value;
    }
    if (routing.min_exact) r.min_exact = solve_dense(x, Objective::min).value;
    if (wants(plan.statistics, Statistic::greedy_max) || routing.max_bracket) {
        r.greedy_max = greedy_permutation(x, Objective::max).value;
    }
    if (wants(plan.statistics, Statistic::greedy_min) || routing.min_greedy_substitute) {
        r.greedy_min = greedy_permutation(x, Objective::min).value;
    }
    if (wants(plan.statistics, Statistic::row_max_sum) || routing.max_bracket) r.row_max_sum = row_max_sum(x);
    if (routing.max_bracket) {
        r.bracket_lower = r.greedy_max;
        r.bracket_upper = r.row_max_sum;
    }
    if (want_fresh) r.fresh_throws = fresh_throw_count(sample);
    if (wants(plan.statistics, Statistic::min_is_zero)) r.min_is_zero = has_perfect_zero_matching(x);
    check_coherence(r, n, m, trial);
    return r;
}

StatisticRow make_row(std::string name, const std::vector<double>& values, const Prediction& prediction,
                      bool with_ratio) {
    StatisticRow row;
    row.statistic = std::move(name);
    row.moments = stats::moments(values);
    row.prediction = prediction;
    if (with_ratio && prediction.kind == PredictionKind::point && prediction.value != 0) {
        row.ratio = row.moments.mean / prediction.value;
    }
    return row;
}

Prediction safe_predict(bool max_side, const RegimeSpec& spec, Index n, Count m) {
    if (n < 2) {
        Prediction p;
        p.n = n;
        p.m = m;
        // A 1x1 matrix is deterministic: both extrema equal m.
        if (spec.family == Family::very_sparse && max_side) {
            p.kind = PredictionKind::point;
            p.theorem = Theorem::t6;
            p.value = static_cast<double>(m);
        }
        return p;
    }
    return max_side ? predict_max(spec, n, m) : predict_min(spec, n, m);
}

}  // namespace

std::string_view to_string(Statistic statistic) noexcept {
    switch (statistic) {
        case Statistic::max_exact: return "max_exact";
        case Statistic::min_exact: return "min_exact";
        case Statistic::greedy_max: return "greedy_max";
        case Statistic::greedy_min: return "greedy_min";
        case Statistic::row_max_sum: return "row_max_sum";
        case Statistic::bracket: return "bracket";
        case Statistic::min_is_zero: return "min_is_zero";
        case Statistic::fresh_throws: return "fresh_throws";
    }
    return "unknown";
}

Statistic parse_statistic(std::string_view name) {
    for (Statistic s : kAllStatistics) {
        if (name == to_string(s)) return s;
    }
    throw std::invalid_argument("unknown statistic '" + std::string(name) + "'");
}

std::vector<Statistic> parse_statistics(std::string_view list) {
    std::vector<Statistic> out;
    while (!list.empty()) {
        const auto comma = list.find(',');
        const auto item = list.substr(0, comma);
        if (!item.empty()) {
            const Statistic s = parse_statistic(item);
            if (!wants(out, s)) out.push_back(s);
        }
        if (comma == std::string_view::npos) break;
        list.remove_prefix(comma + 1);
    }
    if (out.empty()) throw std::invalid_argument("empty statistic list");
    return out;
}

std::string_view to_string(SolverMode mode) noexcept {
    switch (mode) {
        case SolverMode::exact: return "exact";
        case SolverMode::bracket: return "bracket";
        case SolverMode::automatic: return "auto";
    }
    return "unknown";
}

SolverMode parse_solver_mode(std::string_view name) {
    for (SolverMode mode : {SolverMode::exact, SolverMode::bracket, SolverMode::automatic}) {
        if (name == to_string(mode)) return mode;
    }
    throw std::invalid_argument("unknown solver mode '" + std::string(name) + "'");
}

const StatisticRow* ExperimentSummary::find(std::string_view statistic) const {
    for (const auto& row : rows) {
        if (row.statistic == statistic) return &row;
    }
    return nullptr;
}

void validate(const ExperimentPlan& plan) {
    validate(plan.spec);
    if (plan.n_list.empty()) throw std::invalid_argument("n list is empty");
    for (std::size_t i = 0; i < plan.n_list.size(); ++i) {
        if (plan.n_list[i] < 1) throw std::invalid_argument("matrix sides must be positive");
        if (i > 0 && plan.n_list[i] <= plan.n_list[i - 1]) {
            throw std::invalid_argument("n list must be strictly increasing");
        }
    }
    if (plan.trials < 1) throw std::invalid_argument("trials must be at least 1");
    if (plan.statistics.empty()) throw std::invalid_argument("no statistics requested");
    if (plan.spec.family == Family::explicit_m && !plan.m) {
        throw std::invalid_argument("explicit family needs --m");
    }
    if (plan.m && *plan.m < 0) throw std::invalid_argument("ball count must be nonnegative");
    if (!plan.m && plan.n_list.front() < 2) throw std::invalid_argument("ball-count rules need n >= 2");
}

std::vector<ExperimentSummary> run_trials(const ExperimentPlan& plan) {
    validate(plan);
    std::vector<std::pair<Count, Routing>> per_n;
    for (Index n : plan.n_list) {
        const Count m = plan.m ? *plan.m : m_of_n(plan.spec, n);
        per_n.emplace_back(m, route(plan, n, m));  // fails fast before any sampling
    }

    std::vector<ExperimentSummary> out;
    for (std::size_t k = 0; k < plan.n_list.size(); ++k) {
        const Index n = plan.n_list[k];
        const auto& [m, routing] = per_n[k];
        std::vector<TrialRecord> records(static_cast<std::size_t>(plan.trials));
        parallel_for(plan.trials, plan.threads, [&](std::int64_t t) {
            records[static_cast<std::size_t>(t)] = run_one(plan, routing, n, m, t);
        });

        ExperimentSummary summary;
        summary.spec = plan.spec;
        summary.n = n;
        summary.m = m;
        summary.trials = plan.trials;
        summary.seed = plan.master_seed;
        const Prediction pmax = safe_predict(true, plan.spec, n, m);
        const Prediction pmin = safe_predict(false, plan.spec, n, m);

        auto column = [&](std::optional<Count> TrialRecord::*field) {
            std::vector<double> values;
            values.reserve(records.size());
            for (const auto& r : records) values.push_back(static_cast<double>(*(r.*field)));
            return values;
        };
        auto add = [&](const char* name, std::optional<Count> TrialRecord::*field, const Prediction& p, bool ratio) {
            if (records.front().*field) summary.rows.push_back(make_row(name, column(field), p, ratio));
        };

        for (Statistic s : plan.statistics) {
            switch (s) {
                case Statistic::max_exact: add("max_exact", &TrialRecord::max_exact, pmax, true); break;
                case Statistic::min_exact: add("min_exact", &TrialRecord::min_exact, pmin, true); break;
                case Statistic::greedy_max: add("greedy_max", &TrialRecord::greedy_max, pmax, true); break;
                case Statistic::greedy_min: add("greedy_min", &TrialRecord::greedy_min, pmin, true); break;
                case Statistic::row_max_sum: add("row_max_sum", &TrialRecord::row_max_sum, pmax, true); break;
                case Statistic::fresh_throws: add("fresh_throws", &TrialRecord::fresh_throws, pmax, true); break;
                case Statistic::bracket: break;  // emitted below with substitutes
                case Statistic::min_is_zero: {
                    std::vector<double> values;
                    std::int64_t zeros = 0;
                    for (const auto& r : records) {
                        values.push_back(*r.min_is_zero ? 1.0 : 0.0);
                        zeros += *r.min_is_zero ? 1 : 0;
                    }
                    StatisticRow row = make_row("min_is_zero", values, pmin, false);
                    row.zero_fraction = static_cast<double>(zeros) / static_cast<double>(plan.trials);
                    row.zero_ci = stats::wilson95(zeros, plan.trials);
                    summary.rows.push_back(std::move(row));
                    break;
                }
            }
        }
        if (routing.max_bracket) {
            add("bracket_lower", &TrialRecord::bracket_lower, pmax, false);
            add("bracket_upper", &TrialRecord::bracket_upper, pmax, false);
        }
        if (routing.min_greedy_substitute && !wants(plan.statistics, Statistic::greedy_min)) {
            add("greedy_min", &TrialRecord::greedy_min, pmin, false);
        }
        out.push_back(std::move(summary));
    }
    return out;
}

ZeroProbability zero_prob(const RegimeSpec& spec, std::optional<Count> m, Index n, std::int64_t trials,
                          std::uint64_t seed, unsigned threads) {
    ExperimentPlan plan;
    plan.spec = spec;
    plan.m = m;
    plan.n_list = {n};
    plan.trials = trials;
    plan.master_seed = seed;
    plan.statistics = {Statistic::min_is_zero};
    plan.threads = threads;
    const auto summaries = run_trials(plan);
    const StatisticRow& row = *summaries.front().find("min_is_zero");

    ZeroProbability out;
    out.n = n;
    out.m = summaries.front().m;
    out.trials = trials;
    out.fraction = *row.zero_fraction;
    out.zeros = std::llround(out.fraction * static_cast<double>(trials));
    out.ci = *row.zero_ci;
    return out;
}

StepLawResult lemma1_test(Index n, Count m, Index step, std::int64_t samples, std::uint64_t seed) {
    if (n < 1 || n > 6) throw std::invalid_argument("lemma1 test needs 1 <= n <= 6");
    if (m < 0 || m > 30) throw std::invalid_argument("lemma1 test needs 0 <= m <= 30");
    if (step < 1 || step > n) throw std::invalid_argument("step must lie in [1..n]");
    if (samples < 1) throw std::invalid_argument("samples must be positive");

    const Index row = step - 1;
    const Index prefix = n - step + 1;
    const std::uint64_t greedy_stream = derive_seed(seed, 0x6C656D6D61ULL);
    const std::uint64_t prefix_stream = derive_seed(seed, 0x7072656669ULL);

    std::map<std::int64_t, std::int64_t> greedy_hist;
    std::map<std::int64_t, std::int64_t> prefix_hist;
    double greedy_sum = 0;
    double prefix_sum = 0;
    for (std::int64_t s = 0; s < samples; ++s) {
        const auto u = static_cast<std::uint64_t>(s);
        const CountMatrix a = sample_ball_throwing(n, m, {greedy_stream, u}).matrix;
        const Permutation sigma = greedy_permutation(a, Objective::max).permutation;
        const Count pick = a.at(row, sigma[row]);
        ++greedy_hist[pick];
        greedy_sum += static_cast<double>(pick);

        const CountMatrix b = sample_ball_throwing(n, m, {prefix_stream, u}).matrix;
        Count best = 0;
        for (Index j = 0; j < prefix; ++j) best = std::max(best, b.at(row, j));
        ++prefix_hist[best];
        prefix_sum += static_cast<double>(best);
    }

    StepLawResult out;
    out.test = stats::chi_square_two_sample(greedy_hist, prefix_hist);
    out.samples = samples;
    out.mean_greedy = greedy_sum / static_cast<double>(samples);
    out.mean_prefix = prefix_sum / static_cast<double>(samples);
    return out;
}

}  // namespace massign
