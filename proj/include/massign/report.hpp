#pragma once

// Output formats for experiment summaries. CSV is canonical; JSON mirrors it
// record for record; SVG is a fixed-size convenience plot.

#include <filesystem>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>

#include "massign/experiment.hpp"

namespace massign {

inline constexpr std::string_view kCsvHeader =
    "family,c,a,n,m,trials,seed,statistic,mean,std,stderr,pred_kind,pred_value,pred_low,pred_high,ratio,"
    "zero_fraction,zero_ci_low,zero_ci_high";

enum class Format { csv, json };

Format parse_format(std::string_view name);

/// One data row per (summary, statistic). Absent fields are empty; reals use
/// %.10g so output is byte-stable.
void write_csv(std::ostream& out, std::span<const ExperimentSummary> summaries);
void write_json(std::ostream& out, std::span<const ExperimentSummary> summaries);

/// 800x600 plot of ratio (zero_fraction for proportion rows) against log n:
/// one polyline per statistic and a single reference line at 1.
void write_svg(std::ostream& out, std::span<const ExperimentSummary> summaries);

class UnwritablePath : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Writes to `path`, throwing UnwritablePath when it cannot be opened.
void emit(std::span<const ExperimentSummary> summaries, Format format, const std::filesystem::path& path);
void emit_svg(std::span<const ExperimentSummary> summaries, const std::filesystem::path& path);

}  // namespace massign
