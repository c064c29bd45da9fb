#include "massign/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <vector>

#include <json.hpp>

namespace massign {

namespace {

std::string real(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

std::string optional_real(const std::optional<double>& x) { return x ? real(*x) : std::string(); }

bool has_a(const RegimeSpec& spec) { return spec.family == Family::rather_sparse; }
bool has_c(const RegimeSpec& spec) { return spec.family != Family::explicit_m; }

std::ofstream open_for_writing(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw UnwritablePath("cannot write '" + path.string() + "'");
    return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) throw UnwritablePath("write failed for '" + path.string() + "'");
}

}  // namespace

Format parse_format(std::string_view name) {
    if (name == "csv") return Format::csv;
    if (name == "json") return Format::json;
    throw std::invalid_argument("unknown format '" + std::string(name) + "'");
}

void write_csv(std::ostream& out, std::span<const ExperimentSummary> summaries) {
    out << kCsvHeader << '\n';
    for (const auto& s : summaries) {
        for (const auto& row : s.rows) {
            const Prediction& p = row.prediction;
            out << to_string(s.spec.family) << ',' << (has_c(s.spec) ? real(s.spec.c) : "") << ','
                << (has_a(s.spec) ? real(s.spec.a) : "") << ',' << s.n << ',' << s.m << ',' << s.trials << ','
                << s.seed << ',' << row.statistic << ',' << real(row.moments.mean) << ','
                << real(row.moments.sample_std) << ',' << real(row.moments.standard_error) << ','
                << to_string(p.kind) << ',' << (p.kind == PredictionKind::point ? real(p.value) : "") << ','
                << (p.kind == PredictionKind::interval ? real(p.low) : "") << ','
                << (p.kind == PredictionKind::interval ? real(p.high) : "") << ',' << optional_real(row.ratio)
                << ',' << optional_real(row.zero_fraction) << ','
                << (row.zero_ci ? real(row.zero_ci->low) : "") << ','
                << (row.zero_ci ? real(row.zero_ci->high) : "") << '\n';
        }
    }
}

void write_json(std::ostream& out, std::span<const ExperimentSummary> summaries) {
    using nlohmann::ordered_json;
    ordered_json doc = ordered_json::array();
    for (const auto& s : summaries) {
        ordered_json summary;
        summary["family"] = to_string(s.spec.family);
        summary["c"] = has_c(s.spec) ? ordered_json(s.spec.c) : ordered_json(nullptr);
        summary["a"] = has_a(s.spec) ? ordered_json(s.spec.a) : ordered_json(nullptr);
        summary["n"] = s.n;
        summary["m"] = s.m;
        summary["trials"] = s.trials;
        summary["seed"] = s.seed;
        ordered_json rows = ordered_json::array();
        for (const auto& row : s.rows) {
            const Prediction& p = row.prediction;
            ordered_json r;
            r["statistic"] = row.statistic;
            r["mean"] = row.moments.mean;
            r["std"] = row.moments.sample_std;
            r["stderr"] = row.moments.standard_error;
            ordered_json pred;
            pred["kind"] = to_string(p.kind);
            pred["theorem"] = p.theorem == Theorem::none ? ordered_json(nullptr) : ordered_json(to_string(p.theorem));
            if (p.kind == PredictionKind::point) pred["value"] = p.value;
            if (p.kind == PredictionKind::interval) {
                pred["low"] = p.low;
                pred["high"] = p.high;
            }
            r["prediction"] = pred;
            r["ratio"] = row.ratio ? ordered_json(*row.ratio) : ordered_json(nullptr);
            if (row.zero_fraction) {
                r["zero_fraction"] = *row.zero_fraction;
                r["zero_ci"] = {row.zero_ci->low, row.zero_ci->high};
            }
            rows.push_back(std::move(r));
        }
        summary["statistics"] = std::move(rows);
        doc.push_back(std::move(summary));
    }
    out << doc.dump(2) << '\n';
}

void write_svg(std::ostream& out, std::span<const ExperimentSummary> summaries) {
    constexpr double width = 800, height = 600;
    constexpr double left = 70, right = 170, top = 40, bottom = 60;
    constexpr const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                       "#9467bd", "#8c564b", "#e377c2", "#17becf"};

    // Series in order of first appearance.
    std::vector<std::string> order;
    std::map<std::string, std::vector<std::pair<double, double>>> series;
    for (const auto& s : summaries) {
        for (const auto& row : s.rows) {
            if (!series.count(row.statistic)) order.push_back(row.statistic);
            auto& points = series[row.statistic];
            const std::optional<double> y = row.ratio ? row.ratio : row.zero_fraction;
            if (y && std::isfinite(*y)) points.emplace_back(std::log(static_cast<double>(s.n)), *y);
        }
    }

    double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
    double y_lo = 1, y_hi = 1;  // the reference line is always in view
    for (const auto& [name, points] : series) {
        for (const auto& [x, y] : points) {
            x_lo = std::min(x_lo, x);
            x_hi = std::max(x_hi, x);
            y_lo = std::min(y_lo, y);
            y_hi = std::max(y_hi, y);
        }
    }
    if (!(x_lo < x_hi)) {
        const double mid = std::isfinite(x_lo) ? x_lo : 0.0;
        x_lo = mid - 0.5;
        x_hi = mid + 0.5;
    }
    const double pad = 0.08 * std::max(y_hi - y_lo, 0.1);
    y_lo -= pad;
    y_hi += pad;

    auto px = [&](double x) { return left + (x - x_lo) / (x_hi - x_lo) * (width - left - right); };
    auto py = [&](double y) { return height - bottom - (y - y_lo) / (y_hi - y_lo) * (height - top - bottom); };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" viewBox=\"0 0 800 600\">\n";
    out << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"white\"/>\n";
    out << "<path d=\"M" << left << ' ' << top << " V" << height - bottom << " H" << width - right
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    out << "<text x=\"" << (left + width - right) / 2 << "\" y=\"" << height - 20
        << "\" text-anchor=\"middle\" font-size=\"14\">log n</text>\n";
    out << "<text x=\"20\" y=\"" << (top + height - bottom) / 2 << "\" font-size=\"14\" transform=\"rotate(-90 20 "
        << (top + height - bottom) / 2 << ")\" text-anchor=\"middle\">ratio / zero fraction</text>\n";
    for (int t = 0; t <= 4; ++t) {
        const double x = x_lo + (x_hi - x_lo) * t / 4;
        const double y = y_lo + (y_hi - y_lo) * t / 4;
        out << "<text x=\"" << real(px(x)) << "\" y=\"" << height - bottom + 18
            << "\" text-anchor=\"middle\" font-size=\"11\">" << real(std::round(x * 100) / 100) << "</text>\n";
        out << "<text x=\"" << left - 6 << "\" y=\"" << real(py(y) + 4)
            << "\" text-anchor=\"end\" font-size=\"11\">" << real(std::round(y * 1000) / 1000) << "</text>\n";
    }
    out << "<line x1=\"" << left << "\" y1=\"" << real(py(1)) << "\" x2=\"" << width - right << "\" y2=\""
        << real(py(1)) << "\" stroke=\"gray\" stroke-dasharray=\"6 4\"/>\n";

    for (std::size_t k = 0; k < order.size(); ++k) {
        const char* colour = palette[k % std::size(palette)];
        out << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"2\" points=\"";
        const auto& points = series[order[k]];
        for (std::size_t i = 0; i < points.size(); ++i) {
            out << (i ? " " : "") << real(px(points[i].first)) << ',' << real(py(points[i].second));
        }
        out << "\"/>\n";
        const double ly = top + 10 + 20.0 * static_cast<double>(k);
        out << "<text x=\"" << width - right + 12 << "\" y=\"" << real(ly) << "\" font-size=\"12\" fill=\"" << colour
            << "\">" << order[k] << "</text>\n";
    }
    out << "</svg>\n";
}

void emit(std::span<const ExperimentSummary> summaries, Format format, const std::filesystem::path& path) {
    auto out = open_for_writing(path);
    if (format == Format::csv) {
        write_csv(out, summaries);
    } else {
        write_json(out, summaries);
    }
    finish(out, path);
}

void emit_svg(std::span<const ExperimentSummary> summaries, const std::filesystem::path& path) {
    auto out = open_for_writing(path);
    write_svg(out, summaries);
    finish(out, path);
}

}  // namespace massign
