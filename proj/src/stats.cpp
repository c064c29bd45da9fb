#include "massign/stats.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace massign::stats {

Moments moments(std::span<const double> samples) {
    Moments out;
    if (samples.empty()) return out;
    const auto count = static_cast<double>(samples.size());
    out.mean = std::accumulate(samples.begin(), samples.end(), 0.0) / count;
    if (samples.size() > 1) {
        double ss = 0;
        for (double x : samples) ss += (x - out.mean) * (x - out.mean);
        out.sample_std = std::sqrt(ss / (count - 1));
    }
    out.standard_error = out.sample_std / std::sqrt(count);
    return out;
}

Interval wilson95(std::int64_t successes, std::int64_t trials) {
    if (trials < 1 || successes < 0 || successes > trials) {
        throw std::invalid_argument("wilson95: need 0 <= successes <= trials, trials >= 1");
    }
    constexpr double z = 1.959963984540054;
    const double n = static_cast<double>(trials);
    const double phat = static_cast<double>(successes) / n;
    const double denom = 1 + z * z / n;
    const double center = (phat + z * z / (2 * n)) / denom;
    const double half = z / denom * std::sqrt(phat * (1 - phat) / n + z * z / (4 * n * n));
    // Clamp rounding so the interval always contains the point estimate.
    return {std::min(phat, std::max(0.0, center - half)), std::max(phat, std::min(1.0, center + half))};
}

double chi_square_sf(double statistic, int df) {
    if (df < 1) return 1.0;
    if (statistic <= 0) return 1.0;
    return boost::math::cdf(boost::math::complement(boost::math::chi_squared_distribution<double>(df), statistic));
}

namespace {

// Greedy left-to-right pooling: close a group once `ready` holds; a trailing
// group that never became ready is folded into the previous one.
template <typename Ready>
std::vector<std::pair<std::size_t, std::size_t>> pool(std::size_t cells, Ready ready) {
    std::vector<std::pair<std::size_t, std::size_t>> groups;
    std::size_t start = 0;
    for (std::size_t k = 0; k < cells; ++k) {
        if (ready(start, k + 1)) {
            groups.emplace_back(start, k + 1);
            start = k + 1;
        }
    }
    if (start < cells) {
        if (groups.empty()) {
            groups.emplace_back(start, cells);
        } else {
            groups.back().second = cells;
        }
    }
    return groups;
}

}  // namespace

ChiSquareResult chi_square_gof(std::span<const std::int64_t> observed, std::span<const double> probabilities) {
    if (observed.size() != probabilities.size()) throw std::invalid_argument("chi_square_gof: size mismatch");
    const double total = static_cast<double>(std::accumulate(observed.begin(), observed.end(), std::int64_t{0}));
    auto expected = [&](std::size_t lo, std::size_t hi) {
        double p = 0;
        for (std::size_t k = lo; k < hi; ++k) p += probabilities[k];
        return p * total;
    };
    const auto groups = pool(observed.size(), [&](std::size_t lo, std::size_t hi) { return expected(lo, hi) >= 5.0; });

    ChiSquareResult out;
    out.bins = static_cast<int>(groups.size());
    for (const auto& [lo, hi] : groups) {
        double obs = 0;
        for (std::size_t k = lo; k < hi; ++k) obs += static_cast<double>(observed[k]);
        const double e = expected(lo, hi);
        if (e > 0) out.statistic += (obs - e) * (obs - e) / e;
    }
    out.df = out.bins - 1;
    out.p_value = chi_square_sf(out.statistic, out.df);
    return out;
}

ChiSquareResult chi_square_two_sample(const std::map<std::int64_t, std::int64_t>& first,
                                      const std::map<std::int64_t, std::int64_t>& second) {
    std::set<std::int64_t> support;
    for (const auto& [v, count] : first) support.insert(v);
    for (const auto& [v, count] : second) support.insert(v);
    std::vector<double> a;
    std::vector<double> b;
    for (std::int64_t v : support) {
        const auto ia = first.find(v);
        const auto ib = second.find(v);
        a.push_back(ia == first.end() ? 0.0 : static_cast<double>(ia->second));
        b.push_back(ib == second.end() ? 0.0 : static_cast<double>(ib->second));
    }
    const double total_a = std::accumulate(a.begin(), a.end(), 0.0);
    const double total_b = std::accumulate(b.begin(), b.end(), 0.0);
    ChiSquareResult out;
    if (total_a == 0 || total_b == 0) return out;

    const double share_a = total_a / (total_a + total_b);
    const double share_b = total_b / (total_a + total_b);
    auto pooled = [&](std::size_t lo, std::size_t hi) {
        double sa = 0;
        double sb = 0;
        for (std::size_t k = lo; k < hi; ++k) {
            sa += a[k];
            sb += b[k];
        }
        return std::pair{sa, sb};
    };
    const auto groups = pool(a.size(), [&](std::size_t lo, std::size_t hi) {
        const auto [sa, sb] = pooled(lo, hi);
        return (sa + sb) * std::min(share_a, share_b) >= 5.0;
    });

    const double ka = std::sqrt(total_b / total_a);
    const double kb = std::sqrt(total_a / total_b);
    out.bins = static_cast<int>(groups.size());
    for (const auto& [lo, hi] : groups) {
        const auto [sa, sb] = pooled(lo, hi);
        if (sa + sb > 0) out.statistic += (ka * sa - kb * sb) * (ka * sa - kb * sb) / (sa + sb);
    }
    out.df = out.bins - 1;
    out.p_value = chi_square_sf(out.statistic, out.df);
    return out;
}

}  // namespace massign::stats
