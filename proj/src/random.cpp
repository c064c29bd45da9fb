#include "massign/random.hpp"

namespace massign {

Rng::Rng(SeedSpec seed) noexcept {
    std::uint64_t key = mix64(seed.master_seed ^ mix64(seed.stream_index + 0x9E3779B97F4A7C15ULL));
    for (auto& word : state_) {
        key += 0x9E3779B97F4A7C15ULL;
        word = mix64(key);
    }
    // xoshiro must not start from the all-zero state; mix64 is a bijection of
    // distinct inputs so four consecutive outputs cannot all vanish.
}

}  // namespace massign
