#include "qfl/runner.hpp"

#include <iostream>

#include "qfl/federated.hpp"

namespace qfl {

PreparedData prepare_data(const ExperimentConfig& config) {
    PreparedData data;

    const RawDataset raw_train = load_idx(config.train_images, config.train_labels);
    const RawDataset raw_test = load_idx(config.test_images, config.test_labels);
    data.raw_train_count = raw_train.count();
    data.raw_test_count = raw_test.count();

    const std::vector<Example> train = preprocess(raw_train, config.classes);
    data.test_set = preprocess(raw_test, config.classes);
    if (train.empty() || data.test_set.empty())
        throw ConfigError("the selected classes match no train or test examples");

    PartitionSpec spec;
    spec.scheme = config.partition;
    spec.shards_per_client = config.shards_per_client;
    spec.n_clients = config.fl.n_clients;
    spec.seed = derive_seed(config.fl.seed, {kSeedStreamPartition});
    data.clients = partition(train, spec);
    return data;
}

std::vector<RoundMetrics> run_model(const ExperimentConfig& config, ModelKind kind,
                                    const PreparedData& data) {
    FLConfig fl = config.fl;
    fl.model_kind = kind;
    if (kind == ModelKind::Quantum) {
        const QuantumClassifier model(config.quantum);
        std::cerr << "[quantum] " << model.param_count() << " trainable parameters\n";
        return run_experiment(model, fl, data.clients, data.test_set, config.adam,
                              config.record_timing)
            .rounds;
    }
    const MlpClassifier model(config.mlp);
    std::cerr << "[classical] " << model.param_count() << " trainable parameters\n";
    return run_experiment(model, fl, data.clients, data.test_set, config.adam,
                          config.record_timing)
        .rounds;
}

std::vector<RoundMetrics> run_comparison(const ExperimentConfig& config,
                                         const PreparedData& data) {
    std::vector<RoundMetrics> metrics = run_model(config, ModelKind::Quantum, data);
    const std::vector<RoundMetrics> classical =
        run_model(config, ModelKind::ClassicalMLP, data);
    metrics.insert(metrics.end(), classical.begin(), classical.end());
    return metrics;
}

} // namespace qfl
