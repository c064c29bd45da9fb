#include <gtest/gtest.h>

#include <algorithm>
#include <map>

#include "massign/assignment.hpp"
#include "massign/experiment.hpp"
#include "massign/greedy.hpp"
#include "support.hpp"

using namespace massign;
using massign::test_support::dense;
using massign::test_support::random_small;

TEST(Greedy, StrictGapExample) {
    const auto x = dense(2, {5, 5, 9, 0});
    const auto g = greedy_permutation(x, Objective::max);
    EXPECT_EQ(g.value, 5);
    EXPECT_EQ(g.permutation.mapping(), (std::vector<Index>{0, 1}));
    EXPECT_EQ(solve_bruteforce(x, Objective::max).value, 14);
}

TEST(Greedy, OptimalOnDiagonal) {
    const auto x = dense(3, {1, 0, 0, 0, 2, 0, 0, 0, 3});
    EXPECT_EQ(greedy_permutation(x, Objective::max).value, 6);
    EXPECT_EQ(row_max_sum(x), 6);
    EXPECT_EQ(bracket_max(x), (Bracket{6, 6}));
}

TEST(Greedy, AllZero) {
    for (Layout layout : {Layout::dense, Layout::sparse}) {
        const auto x = CountMatrix::zeros(4, layout);
        EXPECT_EQ(greedy_permutation(x, Objective::max).value, 0);
        EXPECT_EQ(greedy_permutation(x, Objective::min).value, 0);
        EXPECT_EQ(greedy_permutation(x, Objective::max).permutation, Permutation::identity(4));
        EXPECT_EQ(row_max_sum(x), 0);
        EXPECT_EQ(bracket_max(x), (Bracket{0, 0}));
    }
}

TEST(Greedy, RowMaxSumAndBracketExample) {
    const auto x = dense(2, {5, 5, 9, 0});
    EXPECT_EQ(row_max_sum(x), 14);
    EXPECT_EQ(bracket_max(x), (Bracket{5, 14}));
}

TEST(Greedy, MinVariantTakesSmallestAvailable) {
    const auto x = dense(3, {4, 0, 0, 0, 1, 2, 7, 0, 5});
    const auto g = greedy_permutation(x, Objective::min);
    // The first row takes the lower of its two zero columns, leaving the last row only its 5.
    EXPECT_EQ(g.permutation.mapping(), (std::vector<Index>{1, 0, 2}));
    EXPECT_EQ(g.value, 5);
    EXPECT_EQ(solve_bruteforce(x, Objective::min).value, 0);
}

TEST(Greedy, DenseAndSparseLayoutsAgree) {
    for (std::uint64_t k = 0; k < 300; ++k) {
        const auto x = random_small(20, k, 1, 30, 300);
        const auto d = x.with_layout(Layout::dense);
        const auto s = x.with_layout(Layout::sparse);
        for (Objective obj : {Objective::max, Objective::min}) {
            const auto gd = greedy_permutation(d, obj);
            const auto gs = greedy_permutation(s, obj);
            ASSERT_EQ(gd.value, gs.value);
            ASSERT_EQ(gd.permutation, gs.permutation) << "instance " << k;
        }
        ASSERT_EQ(row_max_sum(d), row_max_sum(s));
    }
}

TEST(Greedy, BracketContainsExactMax) {
    for (std::uint64_t k = 0; k < 500; ++k) {
        const auto x = random_small(21, k, 2, 7, 30);
        const auto b = bracket_max(x);
        const Count mx = solve_bruteforce(x, Objective::max).value;
        const Count mn = solve_bruteforce(x, Objective::min).value;
        ASSERT_LE(b.lower, mx);
        ASSERT_LE(mx, b.upper);
        ASSERT_GE(greedy_permutation(x, Objective::min).value, mn);
    }
}

TEST(Greedy, ConsumesEveryColumnOnce) {
    for (std::uint64_t k = 0; k < 100; ++k) {
        const auto x = random_small(22, k, 1, 50, 500);
        for (Objective obj : {Objective::max, Objective::min}) {
            auto cols = greedy_permutation(x, obj).permutation.mapping();
            std::sort(cols.begin(), cols.end());
            for (Index j = 0; j < x.size(); ++j) ASSERT_EQ(cols[static_cast<std::size_t>(j)], j);
        }
    }
}

TEST(Greedy, ValueMatchesPermutation) {
    for (std::uint64_t k = 0; k < 100; ++k) {
        const auto x = random_small(23, k, 1, 60, 5000);
        for (Objective obj : {Objective::max, Objective::min}) {
            const auto g = greedy_permutation(x, obj);
            ASSERT_EQ(evaluate(x, g.permutation), g.value);
            ASSERT_EQ(g.solver, SolverId::greedy);
        }
    }
}

TEST(GreedyStepLaw, FirstStepIsUnconditioned) {
    const auto r = lemma1_test(5, 20, 1, 20000, 3);
    EXPECT_GT(r.test.p_value, 0.001);
    EXPECT_GE(r.test.bins, 2);
}

TEST(GreedyStepLaw, MiddleStepAtFiveByFive) {
    const auto r = lemma1_test(5, 20, 3, 100000, 4);
    EXPECT_GT(r.test.p_value, 0.001);
    EXPECT_NEAR(r.mean_greedy, r.mean_prefix, 0.05);
}

TEST(GreedyStepLaw, LastStepAtTwoByTwo) {
    EXPECT_GT(lemma1_test(2, 4, 2, 100000, 5).test.p_value, 0.001);
}

TEST(GreedyStepLaw, RejectsOutOfRangeParameters) {
    EXPECT_THROW(lemma1_test(7, 20, 1, 10, 1), std::invalid_argument);
    EXPECT_THROW(lemma1_test(5, 31, 1, 10, 1), std::invalid_argument);
    EXPECT_THROW(lemma1_test(5, 20, 6, 10, 1), std::invalid_argument);
    EXPECT_THROW(lemma1_test(5, 20, 0, 10, 1), std::invalid_argument);
}
