// AVX2 variants of the kernels in kernels_scalar.cpp. Functions carry a
// target attribute, so this file builds without -mavx2 and is only entered
// after a CPUID check.

#include "massign/kernels.hpp"

#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
#define MASSIGN_HAVE_AVX2 1
#include <immintrin.h>
#else
#define MASSIGN_HAVE_AVX2 0
#endif

#include <cstdint>
#include <limits>

namespace massign::kernels {

#if MASSIGN_HAVE_AVX2

namespace {

#define MASSIGN_AVX2 __attribute__((target("avx2")))

constexpr std::size_t kLanes = 4;

MASSIGN_AVX2 inline __m256i load(const std::int64_t* p) {
    return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
}

MASSIGN_AVX2 inline void store(std::int64_t* p, __m256i v) {
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(p), v);
}

// Folds the per-lane winners of a "strictly better keeps" scan into the lane
// winner with the best value, lowest index among equal values.
template <bool Max>
MASSIGN_AVX2 ArgResult reduce_lanes(__m256i values, __m256i indices) {
    alignas(32) std::int64_t v[kLanes];
    alignas(32) std::int64_t idx[kLanes];
    _mm256_store_si256(reinterpret_cast<__m256i*>(v), values);
    _mm256_store_si256(reinterpret_cast<__m256i*>(idx), indices);
    ArgResult best{0, -1};
    for (std::size_t lane = 0; lane < kLanes; ++lane) {
        if (idx[lane] < 0) continue;
        const bool better = Max ? v[lane] > best.value : v[lane] < best.value;
        if (best.index < 0 || better || (v[lane] == best.value && idx[lane] < best.index)) {
            best = {v[lane], idx[lane]};
        }
    }
    return best;
}

MASSIGN_AVX2 ArgResult relax_avx2(const std::int64_t* row, std::int64_t base, bool negate,
                                  const std::int64_t* col_potential, std::int64_t* dist,
                                  std::int64_t* via, const Mask* taken, std::int64_t from,
                                  std::size_t n) {
    const __m256i zero = _mm256_setzero_si256();
    const __m256i base_v = _mm256_set1_epi64x(base);
    const __m256i from_v = _mm256_set1_epi64x(from);
    const __m256i step = _mm256_set1_epi64x(static_cast<std::int64_t>(kLanes));
    __m256i lane_idx = _mm256_setr_epi64x(0, 1, 2, 3);
    __m256i best_val = _mm256_set1_epi64x(std::numeric_limits<std::int64_t>::max());
    __m256i best_idx = _mm256_set1_epi64x(-1);
    __m256i unset = _mm256_set1_epi64x(-1);

    std::size_t j = 0;
    for (; j + kLanes <= n; j += kLanes) {
        __m256i entry = load(row + j);
        if (negate) entry = _mm256_sub_epi64(zero, entry);
        const __m256i reduced = _mm256_sub_epi64(_mm256_add_epi64(base_v, entry), load(col_potential + j));
        const __m256i open = load(taken + j);
        __m256i d = load(dist + j);
        const __m256i improve = _mm256_andnot_si256(open, _mm256_cmpgt_epi64(d, reduced));
        d = _mm256_blendv_epi8(d, reduced, improve);
        store(dist + j, d);
        store(via + j, _mm256_blendv_epi8(load(via + j), from_v, improve));

        const __m256i better =
            _mm256_andnot_si256(open, _mm256_or_si256(_mm256_cmpgt_epi64(best_val, d), unset));
        best_val = _mm256_blendv_epi8(best_val, d, better);
        best_idx = _mm256_blendv_epi8(best_idx, lane_idx, better);
        unset = _mm256_andnot_si256(better, unset);
        lane_idx = _mm256_add_epi64(lane_idx, step);
    }

    ArgResult best = reduce_lanes<false>(best_val, best_idx);
    for (; j < n; ++j) {
        if (taken[j]) continue;
        const std::int64_t reduced = base + (negate ? -row[j] : row[j]) - col_potential[j];
        if (reduced < dist[j]) {
            dist[j] = reduced;
            via[j] = from;
        }
        if (best.index < 0 || dist[j] < best.value) best = {dist[j], static_cast<std::int64_t>(j)};
    }
    return best;
}

MASSIGN_AVX2 void shift_untaken_avx2(std::int64_t* dist, const Mask* taken, std::int64_t delta,
                                     std::size_t n) {
    const __m256i delta_v = _mm256_set1_epi64x(delta);
    std::size_t j = 0;
    for (; j + kLanes <= n; j += kLanes) {
        const __m256i shift = _mm256_andnot_si256(load(taken + j), delta_v);
        store(dist + j, _mm256_sub_epi64(load(dist + j), shift));
    }
    for (; j < n; ++j) {
        if (!taken[j]) dist[j] -= delta;
    }
}

template <bool Max>
MASSIGN_AVX2 ArgResult masked_arg_avx2(const std::int64_t* row, const Mask* taken, std::size_t n) {
    const __m256i step = _mm256_set1_epi64x(static_cast<std::int64_t>(kLanes));
    __m256i lane_idx = _mm256_setr_epi64x(0, 1, 2, 3);
    __m256i best_val = _mm256_set1_epi64x(Max ? std::numeric_limits<std::int64_t>::min()
                                              : std::numeric_limits<std::int64_t>::max());
    __m256i best_idx = _mm256_set1_epi64x(-1);
    // An untaken lane that still holds idx -1 must win its first comparison
    // even against the sentinel, so "unset" is tracked separately.
    __m256i unset = _mm256_set1_epi64x(-1);

    std::size_t j = 0;
    for (; j + kLanes <= n; j += kLanes) {
        const __m256i x = load(row + j);
        const __m256i open = _mm256_xor_si256(load(taken + j), _mm256_set1_epi64x(-1));
        const __m256i strict = Max ? _mm256_cmpgt_epi64(x, best_val) : _mm256_cmpgt_epi64(best_val, x);
        const __m256i better = _mm256_and_si256(open, _mm256_or_si256(strict, unset));
        best_val = _mm256_blendv_epi8(best_val, x, better);
        best_idx = _mm256_blendv_epi8(best_idx, lane_idx, better);
        unset = _mm256_andnot_si256(better, unset);
        lane_idx = _mm256_add_epi64(lane_idx, step);
    }

    ArgResult best = reduce_lanes<Max>(best_val, best_idx);
    for (; j < n; ++j) {
        if (taken[j]) continue;
        const bool better = Max ? row[j] > best.value : row[j] < best.value;
        if (best.index < 0 || better) best = {row[j], static_cast<std::int64_t>(j)};
    }
    return best;
}

MASSIGN_AVX2 ArgResult masked_argmax_avx2(const std::int64_t* row, const Mask* taken, std::size_t n) {
    return masked_arg_avx2<true>(row, taken, n);
}

MASSIGN_AVX2 ArgResult masked_argmin_avx2(const std::int64_t* row, const Mask* taken, std::size_t n) {
    return masked_arg_avx2<false>(row, taken, n);
}

MASSIGN_AVX2 std::int64_t row_max_avx2(const std::int64_t* row, std::size_t n) {
    __m256i best = _mm256_setzero_si256();
    std::size_t j = 0;
    for (; j + kLanes <= n; j += kLanes) {
        const __m256i x = load(row + j);
        best = _mm256_blendv_epi8(best, x, _mm256_cmpgt_epi64(x, best));
    }
    alignas(32) std::int64_t lanes[kLanes];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), best);
    std::int64_t out = 0;
    for (std::int64_t v : lanes) out = v > out ? v : out;
    for (; j < n; ++j) out = row[j] > out ? row[j] : out;
    return out;
}

#undef MASSIGN_AVX2

constexpr KernelTable kAvx2{
    "avx2", relax_avx2, shift_untaken_avx2, masked_argmax_avx2, masked_argmin_avx2, row_max_avx2,
};

}  // namespace

const KernelTable* avx2_table() noexcept {
    static const bool supported = __builtin_cpu_supports("avx2");
    return supported ? &kAvx2 : nullptr;
}

#else

const KernelTable* avx2_table() noexcept { return nullptr; }

#endif

}  // namespace massign::kernels
