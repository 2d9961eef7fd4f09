#include "qfl/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "qfl/errors.hpp"

namespace qfl {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 440.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 620.0;
constexpr double kTop = 46.0;
constexpr double kBottom = 390.0;

const char* series_color(ModelKind kind) {
    return kind == ModelKind::Quantum ? "#1f77b4" : "#d62728";
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

} // namespace

std::string render_round_chart(std::span<const RoundMetrics> metrics,
                               const std::string& title, const std::string& y_label,
                               double (*value_of)(const RoundMetrics&)) {
    if (metrics.empty()) throw ConfigError("no data rows to plot");

    std::map<ModelKind, std::vector<std::pair<double, double>>> series;
    double x_min = 1e300, x_max = -1e300, y_min = 1e300, y_max = -1e300;
    for (const RoundMetrics& m : metrics) {
        const double x = static_cast<double>(m.round);
        const double y = value_of(m);
        series[m.model].emplace_back(x, y);
        x_min = std::min(x_min, x);
        x_max = std::max(x_max, x);
        y_min = std::min(y_min, y);
        y_max = std::max(y_max, y);
    }
    if (x_min == x_max) { x_min -= 1.0; x_max += 1.0; }
    y_min = std::min(0.0, y_min);
    if (y_min == y_max) y_max = y_min + 1.0;
    y_max += 0.05 * (y_max - y_min);

    const auto sx = [&](double x) {
        return kLeft + (x - x_min) / (x_max - x_min) * (kRight - kLeft);
    };
    const auto sy = [&](double y) {
        return kBottom - (y - y_min) / (y_max - y_min) * (kBottom - kTop);
    };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
        << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight
        << "\" font-family=\"sans-serif\" font-size=\"13\">\n";
    svg << "  <rect width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" fill=\"white\"/>\n";
    svg << "  <text x=\"" << (kWidth / 2) << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-size=\"16\">" << title << "</text>\n";

    // gridlines and tick labels, 5 divisions per axis
    for (int i = 0; i <= 4; ++i) {
        const double xv = x_min + (x_max - x_min) * i / 4.0;
        const double yv = y_min + (y_max - y_min) * i / 4.0;
        svg << "  <line x1=\"" << fmt(sx(xv)) << "\" y1=\"" << kTop << "\" x2=\""
            << fmt(sx(xv)) << "\" y2=\"" << kBottom << "\" stroke=\"#e0e0e0\"/>\n";
        svg << "  <line x1=\"" << kLeft << "\" y1=\"" << fmt(sy(yv)) << "\" x2=\"" << kRight
            << "\" y2=\"" << fmt(sy(yv)) << "\" stroke=\"#e0e0e0\"/>\n";
        svg << "  <text x=\"" << fmt(sx(xv)) << "\" y=\"" << (kBottom + 18)
            << "\" text-anchor=\"middle\">" << fmt(xv) << "</text>\n";
        svg << "  <text x=\"" << (kLeft - 8) << "\" y=\"" << fmt(sy(yv) + 4)
            << "\" text-anchor=\"end\">" << fmt(yv) << "</text>\n";
    }

    // axes
    svg << "  <line x1=\"" << kLeft << "\" y1=\"" << kBottom << "\" x2=\"" << kRight
        << "\" y2=\"" << kBottom << "\" stroke=\"black\"/>\n";
    svg << "  <line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft
        << "\" y2=\"" << kBottom << "\" stroke=\"black\"/>\n";
    svg << "  <text x=\"" << ((kLeft + kRight) / 2) << "\" y=\"" << (kBottom + 40)
        << "\" text-anchor=\"middle\">round</text>\n";
    svg << "  <text x=\"18\" y=\"" << ((kTop + kBottom) / 2)
        << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " << ((kTop + kBottom) / 2)
        << ")\">" << y_label << "</text>\n";

    // series
    double legend_y = kTop + 14.0;
    for (const auto& [kind, points] : series) {
        const char* color = series_color(kind);
        if (points.size() >= 2) {
            svg << "  <polyline fill=\"none\" stroke=\"" << color
                << "\" stroke-width=\"1.8\" points=\"";
            for (std::size_t i = 0; i < points.size(); ++i) {
                if (i) svg << ' ';
                svg << fmt(sx(points[i].first)) << ',' << fmt(sy(points[i].second));
            }
            svg << "\"/>\n";
        } else {
            svg << "  <circle cx=\"" << fmt(sx(points[0].first)) << "\" cy=\""
                << fmt(sy(points[0].second)) << "\" r=\"4\" fill=\"" << color << "\"/>\n";
        }
        // legend entry
        svg << "  <line x1=\"" << (kRight - 150) << "\" y1=\"" << fmt(legend_y - 4)
            << "\" x2=\"" << (kRight - 120) << "\" y2=\"" << fmt(legend_y - 4)
            << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        svg << "  <text x=\"" << (kRight - 112) << "\" y=\"" << fmt(legend_y) << "\">"
            << model_kind_name(kind) << "</text>\n";
        legend_y += 20.0;
    }

    svg << "</svg>\n";
    return svg.str();
}

void write_comparison_charts(std::span<const RoundMetrics> metrics,
                             const std::filesystem::path& out_dir) {
    const std::string accuracy = render_round_chart(
        metrics, "Test accuracy per round", "test accuracy",
        [](const RoundMetrics& m) { return m.test_accuracy; });
    const std::string loss =
        render_round_chart(metrics, "Test loss per round", "test loss",
                           [](const RoundMetrics& m) { return m.test_loss; });

    std::filesystem::create_directories(out_dir);
    for (const auto& [name, body] :
         {std::pair<const char*, const std::string&>{"accuracy.svg", accuracy},
          std::pair<const char*, const std::string&>{"loss.svg", loss}}) {
        std::ofstream out(out_dir / name, std::ios::binary);
        if (!out) throw ConfigError("cannot write " + (out_dir / name).string());
        out << body;
    }
}

} // namespace qfl
