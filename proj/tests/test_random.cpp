#include <gtest/gtest.h>

#include <vector>

#include "massign/random.hpp"
#include "massign/stats.hpp"

using namespace massign;

TEST(Rng, StreamIsPureFunctionOfSeed) {
    Rng a({42, 7});
    Rng b({42, 7});
    for (int i = 0; i < 1000; ++i) ASSERT_EQ(a(), b());
}

TEST(Rng, NeighbouringStreamsDiffer) {
    Rng a({42, 7});
    Rng b({42, 8});
    Rng c({43, 7});
    int equal_ab = 0;
    int equal_ac = 0;
    for (int i = 0; i < 1000; ++i) {
        const auto x = a();
        equal_ab += x == b();
        equal_ac += x == c();
    }
    EXPECT_EQ(equal_ab, 0);
    EXPECT_EQ(equal_ac, 0);
}

TEST(Rng, DeriveSeedSeparatesSalts) {
    EXPECT_NE(derive_seed(1, 100), derive_seed(1, 101));
    EXPECT_NE(derive_seed(1, 100), derive_seed(2, 100));
    EXPECT_EQ(derive_seed(9, 3), derive_seed(9, 3));
}

TEST(Rng, UniformInUnitInterval) {
    Rng rng({1, 0});
    for (int i = 0; i < 100000; ++i) {
        const double u = rng.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
    }
}

TEST(Rng, BelowIsUniform) {
    Rng rng({5, 0});
    constexpr int bins = 7;
    std::vector<std::int64_t> counts(bins, 0);
    for (int i = 0; i < 70000; ++i) {
        const auto v = rng.below(bins);
        ASSERT_LT(v, static_cast<std::uint64_t>(bins));
        ++counts[v];
    }
    const std::vector<double> probs(bins, 1.0 / bins);
    EXPECT_GT(stats::chi_square_gof(counts, probs).p_value, 0.001);
}

TEST(Rng, BelowOneIsZero) {
    Rng rng({5, 1});
    for (int i = 0; i < 100; ++i) EXPECT_EQ(rng.below(1), 0u);
}
