#pragma once

#include <vector>

#include "qfl/experiment_config.hpp"
#include "qfl/metrics.hpp"

namespace qfl {

// seed stream for the data split, distinct from init/shuffle streams
inline constexpr std::uint64_t kSeedStreamPartition = 3;

/// Client shards plus the held-out test set, ready for the round engine.
struct PreparedData {
    std::vector<ClientDataset> clients;
    std::vector<Example> test_set;
    std::size_t raw_train_count = 0;
    std::size_t raw_test_count = 0;
};

/// Loads the IDX pairs named by the config, filters/preprocesses the class
/// subset, and partitions the training examples across clients. The test set
/// is filtered identically and never partitioned.
PreparedData prepare_data(const ExperimentConfig& config);

/// Runs one federated experiment for the given model kind.
std::vector<RoundMetrics> run_model(const ExperimentConfig& config, ModelKind kind,
                                    const PreparedData& data);

/// Runs the quantum and classical experiments on the same prepared data and
/// returns the concatenated metrics, quantum rounds first.
std::vector<RoundMetrics> run_comparison(const ExperimentConfig& config,
                                         const PreparedData& data);

} // namespace qfl
