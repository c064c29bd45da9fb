#include "massign/regime.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace massign {

std::string_view to_string(Family family) noexcept {
    switch (family) {
        case Family::quasi_gaussian: return "quasi-gaussian";
        case Family::critical: return "critical";
        case Family::quasi_poissonian: return "quasi-poissonian";
        case Family::rather_sparse: return "rather-sparse";
        case Family::very_sparse: return "very-sparse";
        case Family::explicit_m: return "explicit";
    }
    return "unknown";
}

Family parse_family(std::string_view name) {
    for (Family f : {Family::quasi_gaussian, Family::critical, Family::quasi_poissonian,
                     Family::rather_sparse, Family::very_sparse, Family::explicit_m}) {
        if (name == to_string(f)) return f;
    }
    throw std::invalid_argument("unknown family '" + std::string(name) + "'");
}

std::string_view to_string(PredictionKind kind) noexcept {
    switch (kind) {
        case PredictionKind::point: return "point";
        case PredictionKind::interval: return "interval";
        case PredictionKind::zero_whp: return "zero_whp";
        case PredictionKind::not_covered: return "not_covered";
    }
    return "unknown";
}

std::string_view to_string(Theorem theorem) noexcept {
    static constexpr std::string_view names[] = {"", "T1", "T2", "T3", "T4", "T5", "T6"};
    return names[static_cast<int>(theorem)];
}

void validate(const RegimeSpec& spec) {
    if (!(spec.c > 0) || !std::isfinite(spec.c)) {
        throw std::invalid_argument("regime constant c must be a positive finite number");
    }
    if (spec.family == Family::rather_sparse && !(spec.a > 0 && spec.a < 1)) {
        throw std::invalid_argument("rather-sparse exponent a must lie in (0, 1)");
    }
}

Count m_of_n(const RegimeSpec& spec, Index n) {
    validate(spec);
    if (n < 2) throw std::invalid_argument("ball-count rules need n >= 2");
    const double nd = n;
    double m = 0;
    switch (spec.family) {
        case Family::quasi_gaussian: m = spec.c * nd * nd * nd * nd; break;
        case Family::critical: m = spec.c * nd * nd * std::log(nd); break;
        case Family::quasi_poissonian: m = spec.c * nd * nd; break;
        case Family::rather_sparse: m = spec.c * std::pow(nd, 2.0 - spec.a); break;
        case Family::very_sparse: m = spec.c * std::sqrt(nd); break;
        case Family::explicit_m: throw std::invalid_argument("explicit family needs an explicit m");
    }
    if (!(m < 0x1.0p62)) throw std::invalid_argument("ball count overflows 64 bits");
    return std::max<Count>(1, std::llround(m));
}

double entropy_gap(double h) noexcept {
    if (h == 0.0) return 1.0;
    const double t = h - 1.0;
    return (1.0 + t) * std::log1p(t) - t;
}

namespace {

// Root of entropy_gap(h) = target on [lo, hi] where the gap minus target
// changes sign. Bisection down to ~1e-14 relative width, then guarded Newton.
double solve_gap(double target, double lo, double hi) {
    auto f = [target](double h) { return entropy_gap(h) - target; };
    const bool rising = f(hi) > f(lo);
    for (int iter = 0; iter < 400; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi || hi - lo <= 1e-14 * std::max(1.0, hi)) break;
        if ((f(mid) > 0) == rising) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    double h = 0.5 * (lo + hi);
    for (int step = 0; step < 4; ++step) {
        const double slope = std::log(h);  // d/dh entropy_gap
        if (slope == 0.0) break;
        const double next = h - f(h) / slope;
        if (!(next > lo && next < hi) || std::fabs(f(next)) >= std::fabs(f(h))) break;
        h = next;
    }
    return h;
}

}  // namespace

HStarSolution h_star(double c) {
    if (!(c > 0) || !std::isfinite(c)) throw std::domain_error("h_star needs c > 0");
    const double target = 1.0 / c;
    // entropy_gap(h) >= (h - 1)^2 / (2h), which exceeds 1/c at h = 3 + 2/c.
    const double h = solve_gap(target, 1.0, 3.0 + 2.0 / c);
    return {c, h, Branch::upper, std::fabs(entropy_gap(h) - target)};
}

HStarSolution h_tilde_star(double c) {
    if (!(c > 1) || !std::isfinite(c)) throw NoLowerBranchSolution();
    const double target = 1.0 / c;
    // entropy_gap falls from 1 at h = 0 to 0 at h = 1.
    const double h = solve_gap(target, 0.0, 1.0);
    return {c, h, Branch::lower, std::fabs(entropy_gap(h) - target)};
}

SparseOrder sparse_order(double a) {
    if (!(a > 0 && a < 1)) throw std::invalid_argument("sparse order needs a in (0, 1)");
    const double inverse = 1.0 / a;
    const double nearest = std::round(inverse);
    if (std::fabs(inverse - nearest) <= 1e-12 * inverse) return {static_cast<int>(nearest), true};
    return {static_cast<int>(std::floor(inverse)), false};
}

namespace {

Prediction make(PredictionKind kind, Theorem theorem, Index n, Count m, double value = 0) {
    Prediction p;
    p.kind = kind;
    p.theorem = theorem;
    p.n = n;
    p.m = m;
    p.value = value;
    return p;
}

Count resolve_m(const RegimeSpec& spec, Index n, std::optional<Count> m) {
    if (m) {
        if (*m < 0) throw std::invalid_argument("ball count must be nonnegative");
        return *m;
    }
    return m_of_n(spec, n);
}

}  // namespace

Prediction predict_max(const RegimeSpec& spec, Index n, std::optional<Count> m_override) {
    validate(spec);
    if (n < 2) throw std::invalid_argument("predictions need n >= 2");
    const Count m = resolve_m(spec, n, m_override);
    const double nd = n;
    const double log_n = std::log(nd);
    switch (spec.family) {
        case Family::quasi_gaussian:
            return make(PredictionKind::point, Theorem::t1, n, m, static_cast<double>(m) / nd);
        case Family::critical:
            return make(PredictionKind::point, Theorem::t2, n, m, spec.c * h_star(spec.c).h * nd * log_n);
        case Family::quasi_poissonian: {
            const double mp = static_cast<double>(m) / (nd * nd);
            const double denominator = mp > 0 ? std::log(log_n / mp) : 0.0;
            if (!(denominator > 0)) return make(PredictionKind::not_covered, Theorem::t4, n, m);
            return make(PredictionKind::point, Theorem::t4, n, m, nd * log_n / denominator);
        }
        case Family::rather_sparse: {
            const SparseOrder order = sparse_order(spec.a);
            if (!order.irregular) {
                return make(PredictionKind::point, Theorem::t5, n, m, order.k * nd);
            }
            Prediction p = make(PredictionKind::interval, Theorem::t5, n, m);
            p.low = (order.k - 1) * nd;
            p.high = order.k * nd;
            return p;
        }
        case Family::very_sparse:
            return make(PredictionKind::point, Theorem::t6, n, m, static_cast<double>(m));
        case Family::explicit_m:
            break;
    }
    return make(PredictionKind::not_covered, Theorem::none, n, m);
}

Prediction predict_min(const RegimeSpec& spec, Index n, std::optional<Count> m_override) {
    validate(spec);
    if (n < 2) throw std::invalid_argument("predictions need n >= 2");
    const Count m = resolve_m(spec, n, m_override);
    const double nd = n;
    switch (spec.family) {
        case Family::quasi_gaussian:
            return make(PredictionKind::point, Theorem::t1, n, m, static_cast<double>(m) / nd);
        case Family::critical:
            if (spec.c > 1) {
                return make(PredictionKind::point, Theorem::t2, n, m,
                            spec.c * h_tilde_star(spec.c).h * nd * std::log(nd));
            }
            if (spec.c < 1) return make(PredictionKind::zero_whp, Theorem::t3, n, m);
            return make(PredictionKind::not_covered, Theorem::none, n, m);
        case Family::quasi_poissonian:
        case Family::rather_sparse:
        case Family::very_sparse:
            return make(PredictionKind::zero_whp, Theorem::t3, n, m);
        case Family::explicit_m:
            break;
    }
    return make(PredictionKind::not_covered, Theorem::none, n, m);
}

ConsistencyReport classify_consistency(const RegimeSpec& spec, const std::vector<Index>& n_range) {
    validate(spec);
    if (n_range.empty()) throw std::invalid_argument("empty n range");
    ConsistencyReport report;
    switch (spec.family) {
        case Family::quasi_gaussian: report.criterion = "mp/log n increasing and >= 10 at largest n"; break;
        case Family::critical: report.criterion = "mp/log n within 1% of c at largest n"; break;
        case Family::quasi_poissonian: report.criterion = "mp/log n decreasing and < 1 at largest n"; break;
        case Family::rather_sparse: report.criterion = "mp n^a within 1% of c at largest n"; break;
        case Family::very_sparse: report.criterion = "m/n < 0.1 at largest n"; break;
        case Family::explicit_m: report.criterion = "none (explicit ball count)"; break;
    }
    if (spec.family == Family::explicit_m) {
        report.ok = true;
        return report;
    }

    for (Index n : n_range) {
        ConsistencyRow row;
        row.n = n;
        row.m = m_of_n(spec, n);
        const double nd = n;
        row.mp = static_cast<double>(row.m) / (nd * nd);
        row.mp_over_log_n = row.mp / std::log(nd);
        switch (spec.family) {
            case Family::critical:
                row.metric = row.mp_over_log_n;
                row.deviation = std::fabs(row.metric - spec.c) / spec.c;
                break;
            case Family::rather_sparse:
                row.metric = row.mp * std::pow(nd, spec.a);
                row.deviation = std::fabs(row.metric - spec.c) / spec.c;
                break;
            case Family::very_sparse:
                row.metric = static_cast<double>(row.m) / nd;
                break;
            default:
                row.metric = row.mp_over_log_n;
                break;
        }
        report.max_relative_deviation = std::max(report.max_relative_deviation, row.deviation);
        report.rows.push_back(row);
    }

    const ConsistencyRow& last = report.rows.back();
    auto monotone = [&](bool increasing) {
        for (std::size_t i = 1; i < report.rows.size(); ++i) {
            const double prev = report.rows[i - 1].metric;
            const double cur = report.rows[i].metric;
            if (increasing ? !(cur > prev) : !(cur < prev)) return false;
        }
        return true;
    };
    switch (spec.family) {
        case Family::quasi_gaussian: report.ok = monotone(true) && last.metric >= 10; break;
        case Family::critical:
        case Family::rather_sparse: report.ok = last.deviation < 0.01; break;
        case Family::quasi_poissonian: report.ok = monotone(false) && last.metric < 1; break;
        case Family::very_sparse: report.ok = last.metric < 0.1; break;
        case Family::explicit_m: report.ok = true; break;
    }
    return report;
}

}  // namespace massign
