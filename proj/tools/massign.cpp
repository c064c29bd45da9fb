#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "massign/assignment.hpp"
#include "massign/experiment.hpp"
#include "massign/regime.hpp"
#include "massign/report.hpp"
#include "massign/sampling.hpp"

namespace {

using namespace massign;

constexpr int kExitUsage = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitInternal = 3;

struct RegimeArgs {
    std::string family;
    double c = 1.0;
    double a = 0.0;
    std::optional<Count> m;

    void attach(CLI::App& cmd, bool with_m) {
        cmd.add_option("--family", family, "quasi-gaussian|critical|quasi-poissonian|rather-sparse|very-sparse|explicit")
            ->required();
        cmd.add_option("--c", c, "regime constant or ball-count scale")->capture_default_str();
        cmd.add_option("--a", a, "rather-sparse exponent in (0, 1)");
        if (with_m) cmd.add_option("--m", m, "ball count (overrides the family rule)");
    }

    RegimeSpec spec() const {
        RegimeSpec s;
        s.family = parse_family(family);
        s.c = c;
        s.a = a;
        validate(s);
        return s;
    }
};

struct RunArgs {
    RegimeArgs regime;
    Index n = 0;
    std::string n_list;
    std::int64_t trials = 0;
    std::uint64_t seed = 0;
    std::string stats;
    std::string solver = "auto";
    std::string out;
    std::string format = "csv";
    std::string svg;
    std::string dump_matrix;
    unsigned threads = 0;
};

void attach_run(CLI::App& cmd, RunArgs& args, bool sweep) {
    args.regime.attach(cmd, true);
    if (sweep) {
        cmd.add_option("--n-list", args.n_list, "comma-separated, strictly increasing sides")->required();
        cmd.add_option("--svg", args.svg, "also plot to this SVG file");
    } else {
        cmd.add_option("--n", args.n, "matrix side")->required()->check(CLI::PositiveNumber);
        cmd.add_option("--dump-matrix", args.dump_matrix, "write trial 0's matrix as text");
    }
    cmd.add_option("--trials", args.trials, "trials per side")->required()->check(CLI::PositiveNumber);
    cmd.add_option("--seed", args.seed, "master seed")->capture_default_str();
    cmd.add_option("--stats", args.stats, "comma-separated statistics")->required();
    cmd.add_option("--solver", args.solver, "exact|bracket|auto")->capture_default_str();
    cmd.add_option("--out", args.out, "output file (default stdout)");
    cmd.add_option("--format", args.format, "csv|json")->capture_default_str();
    cmd.add_option("--threads", args.threads, "worker threads, 0 = all cores")->capture_default_str();
}

std::vector<Index> parse_n_list(const std::string& text) {
    std::vector<Index> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        std::size_t used = 0;
        const long value = std::stol(item, &used);
        if (used != item.size() || value < 1 || value > std::numeric_limits<Index>::max()) {
            throw std::invalid_argument("bad side '" + item + "' in n list");
        }
        out.push_back(static_cast<Index>(value));
    }
    return out;
}

std::vector<int> parse_word(const std::string& text) {
    std::vector<int> out;
    if (text.empty()) return out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        std::size_t used = 0;
        const int value = std::stoi(item, &used);
        if (used != item.size()) throw std::invalid_argument("bad letter '" + item + "'");
        out.push_back(value);
    }
    return out;
}

int run_experiment(const RunArgs& args, bool sweep) {
    ExperimentPlan plan;
    plan.spec = args.regime.spec();
    plan.m = args.regime.m;
    plan.n_list = sweep ? parse_n_list(args.n_list) : std::vector<Index>{args.n};
    plan.trials = args.trials;
    plan.master_seed = args.seed;
    plan.statistics = parse_statistics(args.stats);
    plan.solver_mode = parse_solver_mode(args.solver);
    plan.threads = args.threads;
    const Format format = parse_format(args.format);
    validate(plan);

    const auto summaries = run_trials(plan);
    if (args.out.empty()) {
        if (format == Format::csv) {
            write_csv(std::cout, summaries);
        } else {
            write_json(std::cout, summaries);
        }
    } else {
        emit(summaries, format, args.out);
    }
    if (!args.svg.empty()) emit_svg(summaries, args.svg);
    if (!args.dump_matrix.empty()) {
        const Index n = plan.n_list.front();
        const Count m = summaries.front().m;
        const auto sample = sample_multinomial(n, m, {derive_seed(plan.master_seed, static_cast<std::uint64_t>(n)), 0});
        std::ofstream file(args.dump_matrix);
        if (!file) throw UnwritablePath("cannot write '" + args.dump_matrix + "'");
        write_text(file, sample.matrix);
    }
    return 0;
}

void print_prediction(const Prediction& p, std::string_view stat) {
    std::cout << "statistic: " << stat << '\n'
              << "n: " << p.n << '\n'
              << "m: " << p.m << '\n'
              << "kind: " << to_string(p.kind) << '\n';
    if (p.theorem != Theorem::none) std::cout << "theorem: " << to_string(p.theorem) << '\n';
    char buf[64];
    if (p.kind == PredictionKind::point) {
        std::snprintf(buf, sizeof buf, "%.10g", p.value);
        std::cout << "value: " << buf << '\n';
    }
    if (p.kind == PredictionKind::interval) {
        std::snprintf(buf, sizeof buf, "%.10g", p.low);
        std::cout << "low: " << buf << '\n';
        std::snprintf(buf, sizeof buf, "%.10g", p.high);
        std::cout << "high: " << buf << '\n';
    }
}

int run(int argc, char** argv) {
    CLI::App app{"Extrema of the multinomial random assignment process"};
    app.require_subcommand(1);

    RegimeArgs predict_args;
    Index predict_n = 0;
    std::string predict_stat = "max";
    auto* predict = app.add_subcommand("predict", "leading-order prediction for E max or E min");
    predict_args.attach(*predict, true);
    predict->add_option("--n", predict_n, "matrix side")->required()->check(CLI::Range(2, 1 << 30));
    predict->add_option("--stat", predict_stat, "max|min")->check(CLI::IsMember({"max", "min"}))->capture_default_str();

    double hstar_c = 0;
    std::string hstar_branch = "upper";
    auto* hstar = app.add_subcommand("hstar", "root of H log H - (H - 1) = 1/c");
    hstar->add_option("--c", hstar_c, "positive constant")->required();
    hstar->add_option("--branch", hstar_branch, "upper|lower")
        ->check(CLI::IsMember({"upper", "lower"}))
        ->capture_default_str();

    RunArgs simulate_args;
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo trials at one side");
    attach_run(*simulate, simulate_args, false);

    RunArgs sweep_args;
    auto* sweep = app.add_subcommand("sweep", "Monte Carlo trials over several sides");
    attach_run(*sweep, sweep_args, true);

    RegimeArgs zero_args;
    Index zero_n = 0;
    std::int64_t zero_trials = 0;
    std::uint64_t zero_seed = 0;
    unsigned zero_threads = 0;
    auto* zeroprob = app.add_subcommand("zeroprob", "fraction of trials with a zero minimum");
    zero_args.attach(*zeroprob, true);
    zeroprob->add_option("--n", zero_n, "matrix side")->required()->check(CLI::PositiveNumber);
    zeroprob->add_option("--trials", zero_trials, "trials")->required()->check(CLI::PositiveNumber);
    zeroprob->add_option("--seed", zero_seed, "master seed")->capture_default_str();
    zeroprob->add_option("--threads", zero_threads, "worker threads, 0 = all cores")->capture_default_str();

    std::string word_u;
    std::string word_v;
    Index alphabet = 0;
    auto* hamming = app.add_subcommand("hamming", "minimum coded Hamming distance over letter relabelings");
    hamming->add_option("--u", word_u, "comma-separated letters in 1..alphabet")->required();
    hamming->add_option("--v", word_v, "comma-separated letters in 1..alphabet")->required();
    hamming->add_option("--alphabet", alphabet, "alphabet size")->required()->check(CLI::PositiveNumber);

    Index lemma_n = 0;
    Count lemma_m = 0;
    Index lemma_step = 0;
    std::int64_t lemma_samples = 0;
    std::uint64_t lemma_seed = 0;
    auto* lemma1 = app.add_subcommand("lemma1", "greedy step law vs prefix-max law, two-sample chi-square");
    lemma1->add_option("--n", lemma_n, "side, at most 6")->required();
    lemma1->add_option("--m", lemma_m, "ball count, at most 30")->required();
    lemma1->add_option("--step", lemma_step, "1-based greedy step")->required();
    lemma1->add_option("--samples", lemma_samples, "samples per law")->required();
    lemma1->add_option("--seed", lemma_seed, "master seed")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*predict) {
            const RegimeSpec spec = predict_args.spec();
            const bool max_side = predict_stat == "max";
            const Prediction p = max_side ? predict_max(spec, predict_n, predict_args.m)
                                          : predict_min(spec, predict_n, predict_args.m);
            print_prediction(p, predict_stat);
        } else if (*hstar) {
            const HStarSolution s = hstar_branch == "upper" ? h_star(hstar_c) : h_tilde_star(hstar_c);
            std::printf("c: %.17g\nh: %.17g\nbranch: %s\nresidual: %.3g\n", s.c, s.h,
                        s.branch == Branch::upper ? "upper" : "lower", s.residual);
        } else if (*simulate) {
            return run_experiment(simulate_args, false);
        } else if (*sweep) {
            return run_experiment(sweep_args, true);
        } else if (*zeroprob) {
            const ZeroProbability z = zero_prob(zero_args.spec(), zero_args.m, zero_n, zero_trials, zero_seed,
                                                zero_threads);
            std::printf("n: %d\nm: %lld\ntrials: %lld\nzeros: %lld\nzero_fraction: %.10g\nci_low: %.10g\nci_high: %.10g\n",
                        z.n, static_cast<long long>(z.m), static_cast<long long>(z.trials),
                        static_cast<long long>(z.zeros), z.fraction, z.ci.low, z.ci.high);
        } else if (*hamming) {
            const auto u = parse_word(word_u);
            const auto v = parse_word(word_v);
            const CountMatrix x = matrix_from_words(u, v, alphabet);
            const auto best = x.layout() == Layout::sparse ? solve_sparse_max(x) : solve_dense(x, Objective::max);
            std::cout << "length: " << x.total() << '\n'
                      << "max_agreement: " << best.value << '\n'
                      << "distance: " << x.total() - best.value << '\n';
        } else if (*lemma1) {
            const StepLawResult r = lemma1_test(lemma_n, lemma_m, lemma_step, lemma_samples, lemma_seed);
            std::printf("samples: %lld\nmean_greedy: %.10g\nmean_prefix: %.10g\nstatistic: %.10g\ndf: %d\nbins: %d\n"
                        "p_value: %.10g\n",
                        static_cast<long long>(r.samples), r.mean_greedy, r.mean_prefix, r.test.statistic, r.test.df,
                        r.test.bins, r.test.p_value);
        }
    } catch (const InfeasibleRequest& e) {
        std::cerr << "massign: " << e.what() << '\n';
        return kExitInfeasible;
    } catch (const InvariantViolation& e) {
        std::cerr << "massign: invariant violated: " << e.what() << '\n';
        return kExitInternal;
    } catch (const std::exception& e) {
        std::cerr << "massign: " << e.what() << '\n';
        return kExitUsage;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
