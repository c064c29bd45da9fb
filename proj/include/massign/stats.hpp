#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace massign::stats {

struct Moments {
    double mean = 0;
    double sample_std = 0;      ///< n - 1 denominator; 0 for a single sample
    double standard_error = 0;  ///< sample_std / sqrt(n)
};

Moments moments(std::span<const double> samples);

struct Interval {
    double low = 0;
    double high = 0;
};

/// Wilson score interval at 95% for `successes` out of `trials` (trials >= 1).
Interval wilson95(std::int64_t successes, std::int64_t trials);

/// Upper tail P(chi2_df >= statistic).
double chi_square_sf(double statistic, int df);

struct ChiSquareResult {
    double statistic = 0;
    int df = 0;
    int bins = 0;  ///< after pooling
    double p_value = 1;
};

/// Goodness of fit of observed counts against cell probabilities. Adjacent
/// cells are pooled until every pooled expected count is at least 5.
ChiSquareResult chi_square_gof(std::span<const std::int64_t> observed, std::span<const double> probabilities);

/// Two-sample homogeneity test over a common ordered support. Adjacent
/// values are pooled until every pooled bin expects at least 5 observations
/// from each sample.
ChiSquareResult chi_square_two_sample(const std::map<std::int64_t, std::int64_t>& first,
                                      const std::map<std::int64_t, std::int64_t>& second);

}  // namespace massign::stats
