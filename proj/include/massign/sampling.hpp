#pragma once

// Samplers for the multinomial matrix law M(m, n^2).

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "massign/count_matrix.hpp"
#include "massign/random.hpp"

namespace massign {

/// Exact Binomial(trials, p) variate. Inversion when the mean (after the
/// p <= 1/2 reflection) is at most 30, Hormann's BTRD rejection otherwise.
Count binomial(Rng& rng, Count trials, double p);

/// One ball: row u and column v, 0-based.
struct Throw {
    Index row = 0;
    Index col = 0;
};

struct SampledMatrix {
    CountMatrix matrix;
    /// Throw order, kept only when requested from the ball-throwing sampler.
    std::optional<std::vector<Throw>> trace;
};

enum class SamplerKind { ball_throwing, binomial_chain };

/// Ball-throwing for m <= n^2, binomial chain above.
SamplerKind preferred_sampler(Index n, Count m) noexcept;

/// m independent uniform throws on the n x n table. O(m).
SampledMatrix sample_ball_throwing(Index n, Count m, SeedSpec seed, bool keep_trace = false);

/// Cell by cell, each count drawn from Binomial(remaining balls, 1/remaining cells).
/// O(n^2) binomial draws independent of m.
SampledMatrix sample_binomial_chain(Index n, Count m, SeedSpec seed);

/// Dispatches on preferred_sampler unless a trace is requested, which always
/// uses ball throwing.
SampledMatrix sample_multinomial(Index n, Count m, SeedSpec seed, bool keep_trace = false);

/// Letter-pair count matrix of two equal-length words over the alphabet
/// [1..alphabet]: entry (i, j) counts positions k with u_k = i and v_k = j.
CountMatrix matrix_from_words(std::span<const int> u, std::span<const int> v, Index alphabet);

class NoThrowTrace : public std::logic_error {
public:
    NoThrowTrace() : std::logic_error("no throw trace: matrix was not sampled by ball throwing with trace") {}
};

/// Number of throws whose row and column were both unused by all earlier throws.
/// Lower-bounds the assignment maximum of the resulting matrix.
Count fresh_throw_count(std::span<const Throw> throws, Index n);
Count fresh_throw_count(const SampledMatrix& sample);

}  // namespace massign
