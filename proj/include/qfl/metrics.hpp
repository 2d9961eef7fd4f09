#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "qfl/types.hpp"

namespace qfl {

/// One communication round's record, exactly what one metrics.csv row holds.
struct RoundMetrics {
    int round = 0;
    ModelKind model = ModelKind::Quantum;
    double train_loss = 0.0;
    double test_loss = 0.0;
    double test_accuracy = 0.0;
    long long elapsed_ms = 0;
};

inline constexpr const char* kMetricsCsvHeader =
    "round,model,train_loss,test_loss,test_accuracy,elapsed_ms";

/// Serializes with the pinned header. Reals are written with 17 significant
/// digits so they parse back to the identical double.
std::string metrics_to_csv(std::span<const RoundMetrics> metrics);

void write_metrics_csv(const std::filesystem::path& path,
                       std::span<const RoundMetrics> metrics);

/// Parses a metrics CSV. Throws ConfigError on a bad header, malformed row,
/// or unknown model name.
std::vector<RoundMetrics> parse_metrics_csv(const std::string& text);

std::vector<RoundMetrics> read_metrics_csv(const std::filesystem::path& path);

} // namespace qfl
