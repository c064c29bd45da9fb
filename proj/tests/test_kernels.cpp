#include <gtest/gtest.h>

#include <limits>
#include <vector>

#include "massign/kernels.hpp"
#include "massign/random.hpp"

using namespace massign;
using kernels::ArgResult;
using kernels::Mask;

namespace {

struct Inputs {
    std::vector<std::int64_t> row;
    std::vector<std::int64_t> potential;
    std::vector<std::int64_t> dist;
    std::vector<std::int64_t> via;
    std::vector<Mask> taken;
};

// Small value ranges force many ties; the large range exercises 64-bit compares.
Inputs make_inputs(Rng& rng, std::size_t n, std::int64_t range, double taken_share) {
    Inputs in;
    auto value = [&] { return static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(2 * range + 1))) - range; };
    for (std::size_t j = 0; j < n; ++j) {
        in.row.push_back(value());
        in.potential.push_back(value());
        in.dist.push_back(rng.uniform() < 0.2 ? std::numeric_limits<std::int64_t>::max() / 4 : value());
        in.via.push_back(-1);
        in.taken.push_back(rng.uniform() < taken_share ? -1 : 0);
    }
    return in;
}

void expect_same(const ArgResult& a, const ArgResult& b) {
    EXPECT_EQ(a.index, b.index);
    if (a.index >= 0) EXPECT_EQ(a.value, b.value);
}

class KernelEquivalence : public ::testing::Test {
protected:
    void SetUp() override {
        simd_ = kernels::avx2_table();
        if (simd_ == nullptr) GTEST_SKIP() << "AVX2 not available on this CPU";
    }
    const kernels::KernelTable& scalar_ = kernels::scalar_table();
    const kernels::KernelTable* simd_ = nullptr;
};

constexpr std::int64_t kRanges[] = {2, 1000, std::int64_t{1} << 40};
constexpr double kTakenShares[] = {0.0, 0.5, 0.95, 1.0};

}  // namespace

TEST_F(KernelEquivalence, Relax) {
    Rng rng({1, 0});
    for (std::size_t n = 0; n <= 67; ++n) {
        for (std::int64_t range : kRanges) {
            for (double share : kTakenShares) {
                for (bool negate : {false, true}) {
                    Inputs a = make_inputs(rng, n, range, share);
                    Inputs b = a;
                    const std::int64_t base = static_cast<std::int64_t>(rng.below(100)) - 50;
                    const auto ra = scalar_.relax(a.row.data(), base, negate, a.potential.data(), a.dist.data(),
                                                  a.via.data(), a.taken.data(), 17, n);
                    const auto rb = simd_->relax(b.row.data(), base, negate, b.potential.data(), b.dist.data(),
                                                 b.via.data(), b.taken.data(), 17, n);
                    expect_same(ra, rb);
                    ASSERT_EQ(a.dist, b.dist) << "n=" << n;
                    ASSERT_EQ(a.via, b.via) << "n=" << n;
                }
            }
        }
    }
}

TEST_F(KernelEquivalence, ShiftUntaken) {
    Rng rng({2, 0});
    for (std::size_t n = 0; n <= 67; ++n) {
        for (double share : kTakenShares) {
            Inputs a = make_inputs(rng, n, 1000, share);
            Inputs b = a;
            scalar_.shift_untaken(a.dist.data(), a.taken.data(), 37, n);
            simd_->shift_untaken(b.dist.data(), b.taken.data(), 37, n);
            ASSERT_EQ(a.dist, b.dist);
        }
    }
}

TEST_F(KernelEquivalence, MaskedArgExtrema) {
    Rng rng({3, 0});
    for (std::size_t n = 0; n <= 67; ++n) {
        for (std::int64_t range : kRanges) {
            for (double share : kTakenShares) {
                const Inputs in = make_inputs(rng, n, range, share);
                expect_same(scalar_.masked_argmax(in.row.data(), in.taken.data(), n),
                            simd_->masked_argmax(in.row.data(), in.taken.data(), n));
                expect_same(scalar_.masked_argmin(in.row.data(), in.taken.data(), n),
                            simd_->masked_argmin(in.row.data(), in.taken.data(), n));
            }
        }
    }
}

TEST_F(KernelEquivalence, RowMax) {
    Rng rng({4, 0});
    for (std::size_t n = 0; n <= 67; ++n) {
        for (std::int64_t range : kRanges) {
            Inputs in = make_inputs(rng, n, range, 0.0);
            for (auto& x : in.row) x = x < 0 ? -x : x;  // counts are nonnegative
            ASSERT_EQ(scalar_.row_max(in.row.data(), n), simd_->row_max(in.row.data(), n));
        }
    }
}

TEST(KernelScalar, TiesGoToLowestIndex) {
    const auto& k = kernels::scalar_table();
    const std::vector<std::int64_t> row{3, 7, 7, 1, 1};
    const std::vector<Mask> none(5, 0);
    const std::vector<Mask> first_taken{-1, -1, 0, 0, 0};
    EXPECT_EQ(k.masked_argmax(row.data(), none.data(), 5).index, 1);
    EXPECT_EQ(k.masked_argmin(row.data(), none.data(), 5).index, 3);
    EXPECT_EQ(k.masked_argmax(row.data(), first_taken.data(), 5).index, 2);
    const std::vector<Mask> all(5, -1);
    EXPECT_EQ(k.masked_argmax(row.data(), all.data(), 5).index, -1);
}

TEST(KernelScalar, ActiveTableIsOneOfTheTwo) {
    const auto& active = kernels::active();
    const auto* simd = kernels::avx2_table();
    EXPECT_TRUE(&active == &kernels::scalar_table() || (simd != nullptr && &active == simd));
}
