#pragma once

#include <filesystem>
#include <span>
#include <string>

#include "qfl/metrics.hpp"

namespace qfl {

/// Renders one line chart (value vs round, one polyline per model series)
/// as a standalone SVG string. Series with a single point degenerate to a
/// marker. value_of selects which RoundMetrics field is plotted.
std::string render_round_chart(std::span<const RoundMetrics> metrics,
                               const std::string& title, const std::string& y_label,
                               double (*value_of)(const RoundMetrics&));

/// Writes accuracy.svg and loss.svg (test accuracy / test loss vs round) into
/// out_dir. Throws ConfigError when there are no data rows; nothing is
/// written in that case.
void write_comparison_charts(std::span<const RoundMetrics> metrics,
                             const std::filesystem::path& out_dir);

} // namespace qfl
