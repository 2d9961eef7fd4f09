#pragma once

#include <chrono>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <future>
#include <iostream>
#include <span>
#include <utility>
#include <vector>

#include "qfl/adam.hpp"
#include "qfl/dataset.hpp"
#include "qfl/errors.hpp"
#include "qfl/fedavg.hpp"
#include "qfl/loss.hpp"
#include "qfl/metrics.hpp"
#include "qfl/rng.hpp"

namespace qfl {

struct FLConfig {
    int n_clients = 5;
    int n_rounds = 50;
    int local_epochs = 1;
    int batch_size = 64;
    std::uint64_t seed = 42;
    ModelKind model_kind = ModelKind::Quantum;

    void validate() const {
        if (n_clients < 1) throw ConfigError("n_clients must be >= 1");
        if (n_rounds < 0) throw ConfigError("n_rounds must be >= 0");
        if (local_epochs < 1) throw ConfigError("local_epochs must be >= 1");
        if (batch_size < 1) throw ConfigError("batch_size must be >= 1");
    }
};

/// What the round engine needs from a client model. Both the quantum
/// classifier and the MLP baseline satisfy this with the same flat
/// parameter-vector representation.
template <class M>
concept Classifier = requires(const M m, std::span<const double> params,
                              std::span<const double> features,
                              std::span<const Example> batch, std::uint64_t seed) {
    { m.param_count() } -> std::convertible_to<int>;
    { m.init_params(seed) } -> std::same_as<ModelParameters>;
    { m.forward(params, features) } -> std::same_as<Logits>;
    { m.loss_and_grad(params, batch) } -> std::same_as<LossGrad>;
};

// seed-stream tags
inline constexpr std::uint64_t kSeedStreamInit = 1;
inline constexpr std::uint64_t kSeedStreamShuffle = 2;

/// Round-0 global model from the model's seeded initializer.
template <Classifier M>
GlobalModel initialize(const M& model, std::uint64_t seed) {
    return {0, model.init_params(derive_seed(seed, {kSeedStreamInit}))};
}

struct EvalResult {
    double loss = 0.0;
    double accuracy = 0.0;
};

/// Mean NLL and argmax accuracy over a dataset. Ties pick the lowest index.
template <Classifier M>
EvalResult evaluate(const M& model, std::span<const double> params,
                    std::span<const Example> dataset) {
    if (dataset.empty()) throw ContractError("evaluate over an empty dataset");
    EvalResult result;
    long correct = 0;
    for (const Example& ex : dataset) {
        const Logits logits = model.forward(params, ex.features);
        result.loss += nll_loss(logits, ex.label);
        int best = 0;
        for (std::size_t c = 1; c < logits.values.size(); ++c)
            if (logits.values[c] > logits.values[static_cast<std::size_t>(best)])
                best = static_cast<int>(c);
        if (best == ex.label) ++correct;
    }
    result.loss /= static_cast<double>(dataset.size());
    result.accuracy = static_cast<double>(correct) / static_cast<double>(dataset.size());
    return result;
}

/// One client's round: copy the global parameters, run local_epochs seeded
/// passes over the local data in batches of batch_size (final short batch
/// kept), one fresh-state Adam step per batch. The shuffle stream derives
/// from (seed, global.round, client_id, epoch), so results do not depend on
/// scheduling order. train_loss is the example-weighted mean of the pre-step
/// batch losses.
template <Classifier M>
LocalUpdate local_train(const M& model, const ClientDataset& client,
                        const GlobalModel& global, const FLConfig& config,
                        const AdamConfig& adam_config = {}) {
    if (client.examples.empty())
        throw ContractError("local_train over an empty client dataset");

    ModelParameters params = global.params;
    AdamState adam(params.size(), adam_config);

    double loss_sum = 0.0;
    long loss_weight = 0;
    for (int epoch = 0; epoch < config.local_epochs; ++epoch) {
        std::vector<Example> shuffled = client.examples;
        Rng rng(derive_seed(config.seed,
                            {kSeedStreamShuffle, static_cast<std::uint64_t>(global.round),
                             static_cast<std::uint64_t>(client.client_id),
                             static_cast<std::uint64_t>(epoch)}));
        rng.shuffle(shuffled);
        for (std::size_t start = 0; start < shuffled.size();
             start += static_cast<std::size_t>(config.batch_size)) {
            const std::size_t len = std::min(static_cast<std::size_t>(config.batch_size),
                                             shuffled.size() - start);
            const std::span<const Example> batch{shuffled.data() + start, len};
            const LossGrad lg = model.loss_and_grad(params, batch);
            loss_sum += lg.loss * static_cast<double>(len);
            loss_weight += static_cast<long>(len);
            adam.step(params, lg.grad);
        }
    }

    return {client.client_id, std::move(params),
            static_cast<long>(client.examples.size()),
            loss_sum / static_cast<double>(loss_weight)};
}

struct ExperimentResult {
    std::vector<RoundMetrics> rounds;
    GlobalModel final_model;
};

/// The synchronous federated loop: broadcast, train locally (clients run in
/// parallel; determinism comes from per-client seed streams and client_id
/// ordered aggregation), aggregate, evaluate on the held-out test set.
/// Clients with empty datasets are skipped with a warning. Raw examples never
/// reach the aggregator: only LocalUpdate values cross that boundary.
template <Classifier M>
ExperimentResult run_experiment(const M& model, const FLConfig& config,
                                const std::vector<ClientDataset>& datasets,
                                std::span<const Example> test_set,
                                const AdamConfig& adam_config = {},
                                bool record_timing = false) {
    config.validate();
    if (static_cast<int>(datasets.size()) != config.n_clients)
        throw ContractError("expected " + std::to_string(config.n_clients) +
                            " client datasets, got " + std::to_string(datasets.size()));

    for (const ClientDataset& client : datasets)
        if (client.examples.empty())
            std::cerr << "warning: client " << client.client_id
                      << " has no data and will be skipped\n";

    ExperimentResult result;
    result.final_model = initialize(model, config.seed);

    for (int round = 1; round <= config.n_rounds; ++round) {
        const auto t0 = std::chrono::steady_clock::now();
        const GlobalModel& global = result.final_model;

        std::vector<std::future<LocalUpdate>> futures;
        for (const ClientDataset& client : datasets) {
            if (client.examples.empty()) continue;
            futures.push_back(std::async(std::launch::async, [&model, &client, &global,
                                                              &config, &adam_config] {
                return local_train(model, client, global, config, adam_config);
            }));
        }
        std::vector<LocalUpdate> updates;
        updates.reserve(futures.size());
        for (std::future<LocalUpdate>& f : futures) updates.push_back(f.get());

        result.final_model.params = aggregate(updates);
        result.final_model.round = round;

        double train_loss = 0.0;
        double weight_total = 0.0;
        for (const LocalUpdate& u : updates) {
            train_loss += u.train_loss * static_cast<double>(u.n_examples);
            weight_total += static_cast<double>(u.n_examples);
        }
        train_loss /= weight_total;

        const EvalResult eval = evaluate(model, result.final_model.params, test_set);
        if (!std::isfinite(train_loss) || !std::isfinite(eval.loss))
            throw NumericError("non-finite loss in round " + std::to_string(round));

        const auto wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                 std::chrono::steady_clock::now() - t0)
                                 .count();
        std::cerr << "[" << model_kind_name(config.model_kind) << "] round " << round << "/"
                  << config.n_rounds << "  train_loss=" << train_loss
                  << "  test_loss=" << eval.loss << "  test_acc=" << eval.accuracy << "  ("
                  << wall_ms << " ms)\n";

        result.rounds.push_back({round, config.model_kind, train_loss, eval.loss,
                                 eval.accuracy, record_timing ? wall_ms : 0});
    }
    return result;
}

} // namespace qfl
