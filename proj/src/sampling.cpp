#include "massign/sampling.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace massign {

namespace {

// Inversion by sequential search from 0; valid for p <= 1/2.
Count binomial_inversion(Rng& rng, Count trials, double p) {
    const double q = 1.0 - p;
    const double s = p / q;
    const double a = (static_cast<double>(trials) + 1.0) * s;
    const double r0 = std::exp(static_cast<double>(trials) * std::log1p(-p));
    for (;;) {
        double u = rng.uniform();
        double r = r0;
        Count x = 0;
        while (u > r) {
            u -= r;
            ++x;
            if (x > trials) break;  // rounding ate the tail; redraw
            r *= a / static_cast<double>(x) - s;
        }
        if (x <= trials) return x;
    }
}

// log(k!) - [(k + 1/2) log(k + 1) - (k + 1) + log(2 pi)/2]
double stirling_tail(Count k) {
    static constexpr std::array<double, 10> table = {
        0.08106146679532726, 0.04134069595540929, 0.02767792568499834,
        0.02079067210376509, 0.01664469118982119, 0.01387612882307075,
        0.01189670994589177, 0.01041126526197209, 0.009255462182712733,
        0.008330563433362871,
    };
    if (k < 10) return table[static_cast<std::size_t>(k)];
    const double kp1 = static_cast<double>(k) + 1.0;
    const double kp1sq = kp1 * kp1;
    return (1.0 / 12 - (1.0 / 360 - 1.0 / 1260 / kp1sq) / kp1sq) / kp1;
}

// W. Hormann, "The generation of binomial random variates", J. Statist.
// Comput. Simul. 46 (1993). Requires p <= 1/2 and trials * p >= 10.
Count binomial_btrd(Rng& rng, Count trials, double p) {
    const double nd = static_cast<double>(trials);
    const double q = 1.0 - p;
    const double spq = std::sqrt(nd * p * q);
    const double b = 1.15 + 2.53 * spq;
    const double a = -0.0873 + 0.0248 * b + 0.01 * p;
    const double c = nd * p + 0.5;
    const double alpha = (2.83 + 5.1 / b) * spq;
    const double vr = 0.92 - 4.2 / b;
    const double urvr = 0.86 * vr;
    const auto mode = static_cast<Count>(std::floor((nd + 1.0) * p));
    const double r = p / q;
    const double nr = (nd + 1.0) * r;
    const double npq = nd * p * q;

    for (;;) {
        double v = rng.uniform();
        double u = 0.0;
        if (v <= urvr) {
            u = v / vr - 0.43;
            return static_cast<Count>(std::floor((2 * a / (0.5 - std::fabs(u)) + b) * u + c));
        }
        if (v >= vr) {
            u = rng.uniform() - 0.5;
        } else {
            u = v / vr - 0.93;
            u = std::copysign(0.5, u) - u;
            v = rng.uniform() * vr;
        }
        const double us = 0.5 - std::fabs(u);
        const double kd = std::floor((2 * a / us + b) * u + c);
        if (kd < 0 || kd > nd) continue;
        const auto k = static_cast<Count>(kd);
        v = v * alpha / (a / (us * us) + b);
        const Count km = k > mode ? k - mode : mode - k;

        if (km <= 15) {
            // Recursive evaluation of f(k) / f(mode).
            double f = 1.0;
            if (mode < k) {
                for (Count i = mode + 1; i <= k; ++i) f *= nr / static_cast<double>(i) - r;
            } else if (mode > k) {
                for (Count i = k + 1; i <= mode; ++i) v *= nr / static_cast<double>(i) - r;
            }
            if (v <= f) return k;
            continue;
        }

        // Squeeze, then the exact log-density comparison.
        v = std::log(v);
        const double kmd = static_cast<double>(km);
        const double rho = (kmd / npq) * (((kmd / 3.0 + 0.625) * kmd + 1.0 / 6.0) / npq + 0.5);
        const double t = -kmd * kmd / (2.0 * npq);
        if (v < t - rho) return k;
        if (v > t + rho) continue;
        const double nm = nd - static_cast<double>(mode) + 1.0;
        const double h = (static_cast<double>(mode) + 0.5) *
                             std::log((static_cast<double>(mode) + 1.0) / (r * nm)) +
                         stirling_tail(mode) + stirling_tail(trials - mode);
        const double nk = nd - kd + 1.0;
        if (v <= h + (nd + 1.0) * std::log(nm / nk) + (kd + 0.5) * std::log(nk * r / (kd + 1.0)) -
                     stirling_tail(k) - stirling_tail(trials - k)) {
            return k;
        }
    }
}

CountMatrix counts_from_keys(Index n, std::vector<std::uint64_t>& keys, Layout layout) {
    if (layout == Layout::dense) {
        std::vector<Count> entries(static_cast<std::size_t>(n) * n, 0);
        for (std::uint64_t key : keys) ++entries[key];
        return CountMatrix::from_dense(n, std::move(entries));
    }
    std::sort(keys.begin(), keys.end());
    std::vector<Cell> cells;
    for (std::size_t k = 0; k < keys.size();) {
        std::size_t run = k + 1;
        while (run < keys.size() && keys[run] == keys[k]) ++run;
        const auto row = static_cast<Index>(keys[k] / static_cast<std::uint64_t>(n));
        const auto col = static_cast<Index>(keys[k] % static_cast<std::uint64_t>(n));
        cells.push_back({row, col, static_cast<Count>(run - k)});
        k = run;
    }
    return CountMatrix::from_cells(n, std::move(cells), Layout::sparse);
}

void check_sampler_args(Index n, Count m) {
    if (n < 1) throw std::invalid_argument("matrix side must be positive");
    if (m < 0) throw std::invalid_argument("ball count must be nonnegative");
}

}  // namespace

Count binomial(Rng& rng, Count trials, double p) {
    if (trials < 0 || !(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("binomial: need trials >= 0 and p in [0, 1]");
    }
    if (trials == 0 || p == 0.0) return 0;
    if (p == 1.0) return trials;
    if (p > 0.5) return trials - binomial(rng, trials, 1.0 - p);
    if (static_cast<double>(trials) * p <= 30.0) return binomial_inversion(rng, trials, p);
    return binomial_btrd(rng, trials, p);
}

SamplerKind preferred_sampler(Index n, Count m) noexcept {
    return static_cast<long double>(m) <= static_cast<long double>(n) * n ? SamplerKind::ball_throwing
                                                                          : SamplerKind::binomial_chain;
}

SampledMatrix sample_ball_throwing(Index n, Count m, SeedSpec seed, bool keep_trace) {
    check_sampler_args(n, m);
    Rng rng(seed);
    std::vector<std::uint64_t> keys(static_cast<std::size_t>(m));
    std::optional<std::vector<Throw>> trace;
    if (keep_trace) trace.emplace(static_cast<std::size_t>(m));
    const auto side = static_cast<std::uint64_t>(n);
    for (std::size_t k = 0; k < keys.size(); ++k) {
        const std::uint64_t row = rng.below(side);
        const std::uint64_t col = rng.below(side);
        keys[k] = row * side + col;
        if (trace) (*trace)[k] = {static_cast<Index>(row), static_cast<Index>(col)};
    }
    return {counts_from_keys(n, keys, preferred_layout(n, m)), std::move(trace)};
}

SampledMatrix sample_binomial_chain(Index n, Count m, SeedSpec seed) {
    check_sampler_args(n, m);
    Rng rng(seed);
    const std::uint64_t cells = static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n);
    const Layout layout = preferred_layout(n, m);
    std::vector<Count> dense;
    std::vector<Cell> sparse;
    if (layout == Layout::dense) dense.assign(cells, 0);

    Count remaining = m;
    for (std::uint64_t cell = 0; cell < cells && remaining > 0; ++cell) {
        const std::uint64_t cells_left = cells - cell;
        const Count x = cells_left == 1
                            ? remaining
                            : binomial(rng, remaining, 1.0 / static_cast<double>(cells_left));
        if (x == 0) continue;
        remaining -= x;
        if (layout == Layout::dense) {
            dense[cell] = x;
        } else {
            sparse.push_back({static_cast<Index>(cell / static_cast<std::uint64_t>(n)),
                              static_cast<Index>(cell % static_cast<std::uint64_t>(n)), x});
        }
    }
    if (layout == Layout::dense) return {CountMatrix::from_dense(n, std::move(dense)), std::nullopt};
    return {CountMatrix::from_cells(n, std::move(sparse), Layout::sparse), std::nullopt};
}

SampledMatrix sample_multinomial(Index n, Count m, SeedSpec seed, bool keep_trace) {
    if (keep_trace || preferred_sampler(n, m) == SamplerKind::ball_throwing) {
        return sample_ball_throwing(n, m, seed, keep_trace);
    }
    return sample_binomial_chain(n, m, seed);
}

CountMatrix matrix_from_words(std::span<const int> u, std::span<const int> v, Index alphabet) {
    if (alphabet < 1) throw std::invalid_argument("alphabet size must be positive");
    if (u.size() != v.size()) {
        throw std::invalid_argument("words differ in length (" + std::to_string(u.size()) + " vs " +
                                    std::to_string(v.size()) + ")");
    }
    std::vector<Cell> cells;
    cells.reserve(u.size());
    for (std::size_t k = 0; k < u.size(); ++k) {
        if (u[k] < 1 || u[k] > alphabet || v[k] < 1 || v[k] > alphabet) {
            throw std::invalid_argument("letter at position " + std::to_string(k + 1) +
                                        " outside alphabet [1.." + std::to_string(alphabet) + "]");
        }
        cells.push_back({u[k] - 1, v[k] - 1, 1});
    }
    const auto m = static_cast<Count>(u.size());
    return CountMatrix::from_cells(alphabet, std::move(cells), preferred_layout(alphabet, m));
}

Count fresh_throw_count(std::span<const Throw> throws, Index n) {
    std::vector<bool> row_used(static_cast<std::size_t>(n), false);
    std::vector<bool> col_used(static_cast<std::size_t>(n), false);
    Count fresh = 0;
    for (const Throw& t : throws) {
        if (t.row < 0 || t.row >= n || t.col < 0 || t.col >= n) {
            throw std::out_of_range("throw outside the table");
        }
        if (!row_used[t.row] && !col_used[t.col]) ++fresh;
        row_used[t.row] = true;
        col_used[t.col] = true;
    }
    return fresh;
}

Count fresh_throw_count(const SampledMatrix& sample) {
    if (!sample.trace) throw NoThrowTrace();
    return fresh_throw_count(*sample.trace, sample.matrix.size());
}

}  // namespace massign
