#pragma once

#include <cstdint>
#include <vector>

#include "massign/count_matrix.hpp"
#include "massign/random.hpp"
#include "massign/sampling.hpp"

namespace massign::test_support {

inline CountMatrix dense(Index n, std::vector<Count> entries) { return CountMatrix::from_dense(n, std::move(entries)); }

/// Multinomial matrix with n in [lo_n, hi_n] and m in [0, hi_m], drawn from stream `k`.
inline CountMatrix random_small(std::uint64_t salt, std::uint64_t k, Index lo_n, Index hi_n, Count hi_m) {
    Rng rng({derive_seed(0x5eed, salt), k});
    const Index n = lo_n + static_cast<Index>(rng.below(static_cast<std::uint64_t>(hi_n - lo_n + 1)));
    const Count m = static_cast<Count>(rng.below(static_cast<std::uint64_t>(hi_m + 1)));
    return sample_multinomial(n, m, {derive_seed(0xfeed, salt), k}).matrix;
}

}  // namespace massign::test_support
