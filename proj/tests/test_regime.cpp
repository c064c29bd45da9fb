#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "massign/regime.hpp"

using namespace massign;

namespace {

// Independent oracle: plain bisection on H log H - H + 1 - 1/c.
double bisect_root(double c, double lo, double hi) {
    auto f = [c](double h) { return (h > 0 ? h * std::log(h) : 0.0) - h + 1 - 1 / c; };
    const bool rising = f(hi) > f(lo);
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if ((f(mid) > 0) == rising) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return 0.5 * (lo + hi);
}

std::vector<double> log_grid(double lo, double hi, int points) {
    std::vector<double> out;
    for (int i = 0; i < points; ++i) out.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (points - 1)));
    return out;
}

}  // namespace

TEST(HStar, ExactAtOne) {
    const auto s = h_star(1.0);
    EXPECT_NEAR(s.h, std::numbers::e, 1e-12);
    EXPECT_EQ(s.branch, Branch::upper);
}

TEST(HStar, KnownValues) {
    EXPECT_NEAR(h_star(2).h, 2.155535203500502, 1e-12);
    EXPECT_NEAR(h_star(10).h, 1.479432717433224, 1e-12);
    EXPECT_NEAR(h_star(0.01).h, 37.66192348809895, 1e-10);
    EXPECT_NEAR(h_star(1e6).h, 1.001414546856438, 1e-9);
    EXPECT_LT(h_star(1e6).h - 1, 1e-2);
}

TEST(HStar, RejectsNonPositive) {
    EXPECT_THROW(h_star(0), std::domain_error);
    EXPECT_THROW(h_star(-1), std::domain_error);
    EXPECT_THROW(h_star(std::nan("")), std::domain_error);
}

TEST(HTildeStar, KnownValues) {
    EXPECT_NEAR(h_tilde_star(2).h, 0.1866823088508370, 1e-12);
    EXPECT_NEAR(h_tilde_star(10).h, 0.5875396132727880, 1e-12);
    EXPECT_NEAR(h_tilde_star(1e6).h, 0.9985861198102588, 1e-9);
    EXPECT_EQ(h_tilde_star(2).branch, Branch::lower);
}

TEST(HTildeStar, NoSolutionAtOrBelowOne) {
    EXPECT_THROW(h_tilde_star(0.5), NoLowerBranchSolution);
    EXPECT_THROW(h_tilde_star(1.0), NoLowerBranchSolution);
}

TEST(Roots, ResidualMonotonicityAndBranchesOnGrid) {
    double previous_upper = INFINITY;
    for (double c : log_grid(0.01, 1e6, 80)) {
        const auto s = h_star(c);
        ASSERT_LT(s.residual, 1e-12) << "c=" << c;
        ASSERT_GT(s.h, 1.0);
        ASSERT_LT(s.h, previous_upper);
        ASSERT_NEAR(s.h, bisect_root(c, 1.0, 3.0 + 2.0 / c), 1e-9 * s.h);
        previous_upper = s.h;
    }
    double previous_lower = 0;
    for (double c : log_grid(1.0001, 1e6, 80)) {
        const auto s = h_tilde_star(c);
        ASSERT_LT(s.residual, 1e-12) << "c=" << c;
        ASSERT_GT(s.h, 0.0);
        ASSERT_LT(s.h, 1.0);
        ASSERT_GT(s.h, previous_lower);
        ASSERT_NEAR(s.h, bisect_root(c, 0.0, 1.0), 1e-9);
        previous_lower = s.h;
    }
}

TEST(EntropyGap, MatchesDefinition) {
    for (double h : {0.1, 0.5, 1.0, 2.0, 10.0}) {
        EXPECT_NEAR(entropy_gap(h), h * std::log(h) - (h - 1), 1e-14);
    }
    EXPECT_DOUBLE_EQ(entropy_gap(0.0), 1.0);
}

TEST(MOfN, CriticalRoundsToNearest) {
    EXPECT_EQ(m_of_n({Family::critical, 0.5, 0}, 400), 479317);
    EXPECT_EQ(m_of_n({Family::critical, 1, 0}, 100), 46052);
}

TEST(MOfN, OtherFamilies) {
    EXPECT_EQ(m_of_n({Family::very_sparse, 1, 0}, 10000), 100);
    EXPECT_EQ(m_of_n({Family::rather_sparse, 1, 0.35}, 3000), 546072);
    EXPECT_EQ(m_of_n({Family::quasi_gaussian, 1, 0}, 100), 100000000);
    EXPECT_EQ(m_of_n({Family::quasi_poissonian, 1, 0}, 1000), 1000000);
    EXPECT_EQ(m_of_n({Family::very_sparse, 1, 0}, 2), 1);
    EXPECT_EQ(m_of_n({Family::rather_sparse, 1e-9, 0.5}, 2), 1);
}

TEST(MOfN, RejectsBadInput) {
    EXPECT_THROW(m_of_n({Family::critical, 1, 0}, 1), std::invalid_argument);
    EXPECT_THROW(m_of_n({Family::explicit_m, 1, 0}, 10), std::invalid_argument);
    EXPECT_THROW(m_of_n({Family::rather_sparse, 1, 1.0}, 10), std::invalid_argument);
    EXPECT_THROW(m_of_n({Family::critical, -1, 0}, 10), std::invalid_argument);
}

TEST(SparseOrder, SelectsBracketingInteger) {
    for (double a = 0.013; a < 1; a += 0.0173) {
        const auto order = sparse_order(a);
        ASSERT_FALSE(order.irregular) << a;
        ASSERT_LT(1.0 / (order.k + 1), a);
        ASSERT_LT(a, 1.0 / order.k);
    }
    EXPECT_EQ(sparse_order(0.35).k, 2);
    EXPECT_TRUE(sparse_order(0.5).irregular);
    EXPECT_EQ(sparse_order(0.5).k, 2);
    EXPECT_TRUE(sparse_order(1.0 / 3).irregular);
    EXPECT_EQ(sparse_order(1.0 / 3).k, 3);
}

TEST(PredictMax, QuasiGaussian) {
    const auto p = predict_max({Family::quasi_gaussian, 1, 0}, 100, 100000000);
    EXPECT_EQ(p.kind, PredictionKind::point);
    EXPECT_EQ(p.theorem, Theorem::t1);
    EXPECT_DOUBLE_EQ(p.value, 1e6);
}

TEST(PredictMax, Critical) {
    const auto p = predict_max({Family::critical, 1, 0}, 100);
    EXPECT_EQ(p.kind, PredictionKind::point);
    EXPECT_NEAR(p.value, 1251.8150433532792, 1e-8);
    EXPECT_EQ(p.m, 46052);
}

TEST(PredictMax, RatherSparseIrregularIsInterval) {
    const auto p = predict_max({Family::rather_sparse, 3, 0.5}, 1000);
    EXPECT_EQ(p.kind, PredictionKind::interval);
    EXPECT_DOUBLE_EQ(p.low, 1000);
    EXPECT_DOUBLE_EQ(p.high, 2000);
    EXPECT_LE(p.low, p.high);
}

TEST(PredictMax, RatherSparseRegular) {
    const auto p = predict_max({Family::rather_sparse, 1, 0.35}, 3000);
    EXPECT_EQ(p.kind, PredictionKind::point);
    EXPECT_DOUBLE_EQ(p.value, 6000);
    EXPECT_EQ(p.theorem, Theorem::t5);
}

TEST(PredictMax, QuasiPoissonianUsesFiniteNForm) {
    const auto p = predict_max({Family::quasi_poissonian, 1, 0}, 100);
    EXPECT_EQ(p.kind, PredictionKind::point);
    EXPECT_NEAR(p.value, 301.54738238809904, 1e-9);
    // log n / mp <= 1 leaves the formula undefined.
    EXPECT_EQ(predict_max({Family::quasi_poissonian, 10, 0}, 100).kind, PredictionKind::not_covered);
}

TEST(PredictMax, VerySparseIsM) {
    const auto p = predict_max({Family::very_sparse, 1, 0}, 10000, 200);
    EXPECT_DOUBLE_EQ(p.value, 200);
    EXPECT_EQ(p.theorem, Theorem::t6);
}

TEST(PredictMin, Values) {
    EXPECT_DOUBLE_EQ(predict_min({Family::quasi_gaussian, 1, 0}, 100, 100000000).value, 1e6);
    const auto crit = predict_min({Family::critical, 2, 0}, 100);
    EXPECT_EQ(crit.kind, PredictionKind::point);
    EXPECT_NEAR(crit.value, 171.9407605942591, 1e-8);
    EXPECT_EQ(predict_min({Family::very_sparse, 1, 0}, 10000).kind, PredictionKind::zero_whp);
    EXPECT_EQ(predict_min({Family::critical, 0.5, 0}, 400).kind, PredictionKind::zero_whp);
    EXPECT_EQ(predict_min({Family::quasi_poissonian, 1, 0}, 100).kind, PredictionKind::zero_whp);
    EXPECT_EQ(predict_min({Family::rather_sparse, 1, 0.35}, 100).kind, PredictionKind::zero_whp);
    EXPECT_EQ(predict_min({Family::critical, 1, 0}, 100).kind, PredictionKind::not_covered);
}

TEST(PredictMin, ExplicitIsNotCovered) {
    EXPECT_EQ(predict_min({Family::explicit_m, 1, 0}, 10, 5).kind, PredictionKind::not_covered);
    EXPECT_EQ(predict_max({Family::explicit_m, 1, 0}, 10, 5).kind, PredictionKind::not_covered);
}

TEST(Consistency, CriticalAtOne) {
    const auto r = classify_consistency({Family::critical, 1, 0}, {100, 1000, 10000});
    EXPECT_TRUE(r.ok);
    EXPECT_LT(r.max_relative_deviation, 0.01);
}

TEST(Consistency, VerySparse) {
    const auto r = classify_consistency({Family::very_sparse, 1, 0}, {10000});
    EXPECT_TRUE(r.ok);
    EXPECT_NEAR(r.rows.back().metric, 0.01, 1e-12);
}

TEST(Consistency, RatherSparse) {
    const auto r = classify_consistency({Family::rather_sparse, 1, 0.35}, {1000});
    EXPECT_TRUE(r.ok);
    EXPECT_LT(r.rows.back().deviation, 0.01);
}

TEST(Consistency, QuasiFamilies) {
    EXPECT_TRUE(classify_consistency({Family::quasi_poissonian, 1, 0}, {100, 1000, 10000}).ok);
    EXPECT_TRUE(classify_consistency({Family::quasi_gaussian, 1, 0}, {10, 100}).ok);
}

TEST(Names, RoundTrip) {
    for (Family f : {Family::quasi_gaussian, Family::critical, Family::quasi_poissonian, Family::rather_sparse,
                     Family::very_sparse, Family::explicit_m}) {
        EXPECT_EQ(parse_family(to_string(f)), f);
    }
    EXPECT_THROW(parse_family("dense"), std::invalid_argument);
    EXPECT_EQ(to_string(Theorem::t4), "T4");
}
