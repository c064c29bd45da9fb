#include <gtest/gtest.h>

#include <cmath>

#include "massign/stats.hpp"

using namespace massign::stats;

TEST(Moments, Basic) {
    const std::vector<double> xs{1, 2, 3, 4};
    const auto m = moments(xs);
    EXPECT_DOUBLE_EQ(m.mean, 2.5);
    EXPECT_NEAR(m.sample_std, std::sqrt(5.0 / 3.0), 1e-15);
    EXPECT_NEAR(m.standard_error, m.sample_std / 2, 1e-15);
}

TEST(Moments, SingleSampleHasNoSpread) {
    const std::vector<double> xs{7};
    const auto m = moments(xs);
    EXPECT_EQ(m.mean, 7);
    EXPECT_EQ(m.sample_std, 0);
    EXPECT_EQ(m.standard_error, 0);
}

TEST(Wilson, KnownIntervals) {
    const auto none = wilson95(0, 10);
    EXPECT_DOUBLE_EQ(none.low, 0.0);
    EXPECT_NEAR(none.high, 0.2775327998628892, 1e-12);
    const auto half = wilson95(5, 10);
    EXPECT_NEAR(half.low, 0.236593090512564, 1e-12);
    EXPECT_NEAR(half.high, 0.7634069094874361, 1e-12);
    const auto all = wilson95(30, 30);
    EXPECT_NEAR(all.low, 0.8864866068260312, 1e-12);
    EXPECT_DOUBLE_EQ(all.high, 1.0);
}

TEST(Wilson, AlwaysContainsEstimate) {
    for (std::int64_t n : {1, 2, 3, 10, 37, 1000}) {
        for (std::int64_t k = 0; k <= n; ++k) {
            const auto ci = wilson95(k, n);
            const double p = static_cast<double>(k) / static_cast<double>(n);
            ASSERT_LE(ci.low, p);
            ASSERT_GE(ci.high, p);
            ASSERT_GE(ci.low, 0.0);
            ASSERT_LE(ci.high, 1.0);
        }
    }
    EXPECT_THROW(wilson95(3, 2), std::invalid_argument);
    EXPECT_THROW(wilson95(0, 0), std::invalid_argument);
}

TEST(ChiSquare, SurvivalFunction) {
    EXPECT_NEAR(chi_square_sf(3.0, 2), 0.22313016014842982, 1e-12);
    EXPECT_NEAR(chi_square_sf(10.0, 5), 0.07523524614651217, 1e-12);
    EXPECT_NEAR(chi_square_sf(0.5, 1), 0.47950012218695337, 1e-12);
    EXPECT_EQ(chi_square_sf(0.0, 3), 1.0);
}

TEST(ChiSquare, GoodnessOfFit) {
    const std::vector<std::int64_t> obs{10, 20, 30};
    const std::vector<double> probs(3, 1.0 / 3);
    const auto r = chi_square_gof(obs, probs);
    EXPECT_NEAR(r.statistic, 10.0, 1e-12);
    EXPECT_EQ(r.df, 2);
    EXPECT_NEAR(r.p_value, 0.006737946999085468, 1e-12);
}

TEST(ChiSquare, GoodnessOfFitPoolsSparseTail) {
    // Expected counts 50, 40, 6, 3, 1: the last two cells fold into the third.
    const std::vector<std::int64_t> obs{50, 40, 6, 3, 1};
    const std::vector<double> probs{0.5, 0.4, 0.06, 0.03, 0.01};
    const auto r = chi_square_gof(obs, probs);
    EXPECT_EQ(r.bins, 3);
    EXPECT_NEAR(r.statistic, 0.0, 1e-12);
    EXPECT_EQ(r.df, 2);
}

TEST(ChiSquare, TwoSampleIdenticalIsZero) {
    const std::map<std::int64_t, std::int64_t> a{{0, 100}, {1, 50}, {2, 10}};
    const auto r = chi_square_two_sample(a, a);
    EXPECT_NEAR(r.statistic, 0.0, 1e-12);
    EXPECT_DOUBLE_EQ(r.p_value, 1.0);
}

TEST(ChiSquare, TwoSampleMatchesContingencyFormula) {
    // Equal sample sizes: sum (a - b)^2 / (a + b).
    const std::map<std::int64_t, std::int64_t> a{{0, 60}, {1, 40}};
    const std::map<std::int64_t, std::int64_t> b{{0, 40}, {1, 60}};
    const auto r = chi_square_two_sample(a, b);
    EXPECT_NEAR(r.statistic, 400.0 / 100 + 400.0 / 100, 1e-12);
    EXPECT_EQ(r.df, 1);
}

TEST(ChiSquare, TwoSampleDetectsShift) {
    const std::map<std::int64_t, std::int64_t> a{{0, 500}, {1, 500}};
    const std::map<std::int64_t, std::int64_t> b{{1, 500}, {2, 500}};
    EXPECT_LT(chi_square_two_sample(a, b).p_value, 1e-10);
}
