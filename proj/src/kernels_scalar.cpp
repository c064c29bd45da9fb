#include <algorithm>
#include <cstdlib>
#include <string_view>

#include "massign/kernels.hpp"

namespace massign::kernels {

namespace {

ArgResult relax_scalar(const std::int64_t* row, std::int64_t base, bool negate,
                       const std::int64_t* col_potential, std::int64_t* dist, std::int64_t* via,
                       const Mask* taken, std::int64_t from, std::size_t n) {
    ArgResult best{0, -1};
    for (std::size_t j = 0; j < n; ++j) {
        if (taken[j]) continue;
        const std::int64_t entry = negate ? -row[j] : row[j];
        const std::int64_t reduced = base + entry - col_potential[j];
        if (reduced < dist[j]) {
            dist[j] = reduced;
            via[j] = from;
        }
        if (best.index < 0 || dist[j] < best.value) best = {dist[j], static_cast<std::int64_t>(j)};
    }
    return best;
}

void shift_untaken_scalar(std::int64_t* dist, const Mask* taken, std::int64_t delta, std::size_t n) {
    for (std::size_t j = 0; j < n; ++j) {
        if (!taken[j]) dist[j] -= delta;
    }
}

ArgResult masked_argmax_scalar(const std::int64_t* row, const Mask* taken, std::size_t n) {
    ArgResult best{0, -1};
    for (std::size_t j = 0; j < n; ++j) {
        if (taken[j]) continue;
        if (best.index < 0 || row[j] > best.value) best = {row[j], static_cast<std::int64_t>(j)};
    }
    return best;
}

ArgResult masked_argmin_scalar(const std::int64_t* row, const Mask* taken, std::size_t n) {
    ArgResult best{0, -1};
    for (std::size_t j = 0; j < n; ++j) {
        if (taken[j]) continue;
        if (best.index < 0 || row[j] < best.value) best = {row[j], static_cast<std::int64_t>(j)};
    }
    return best;
}

std::int64_t row_max_scalar(const std::int64_t* row, std::size_t n) {
    std::int64_t best = 0;
    for (std::size_t j = 0; j < n; ++j) best = std::max(best, row[j]);
    return best;
}

constexpr KernelTable kScalar{
    "scalar", relax_scalar, shift_untaken_scalar, masked_argmax_scalar, masked_argmin_scalar,
    row_max_scalar,
};

const KernelTable& select() noexcept {
    const KernelTable* avx2 = avx2_table();
    if (const char* forced = std::getenv("MASSIGN_SIMD")) {
        const std::string_view want(forced);
        if (want == "scalar") return kScalar;
        if (want == "avx2" && avx2 != nullptr) return *avx2;
    }
    return avx2 != nullptr ? *avx2 : kScalar;
}

}  // namespace

const KernelTable& scalar_table() noexcept { return kScalar; }

const KernelTable& active() noexcept {
    static const KernelTable& table = select();
    return table;
}

}  // namespace massign::kernels
