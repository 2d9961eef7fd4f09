#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "qfl/federated.hpp"
#include "qfl/mlp.hpp"
#include "qfl/quantum_model.hpp"
#include "support.hpp"

using namespace qfl;
using testsup::random_batch;

namespace {

std::vector<ClientDataset> make_clients(Rng& rng, int n_clients, int per_client,
                                        int feature_dim, int n_classes) {
    std::vector<ClientDataset> clients;
    for (int i = 0; i < n_clients; ++i)
        clients.push_back({i, random_batch(rng, per_client, feature_dim, n_classes)});
    return clients;
}

} // namespace

TEST_CASE("initialize is deterministic in the seed") {
    const QuantumClassifier model{QuantumClassifierConfig{4, 2, 4, 16}};
    const GlobalModel a = initialize(model, 42);
    const GlobalModel b = initialize(model, 42);
    const GlobalModel c = initialize(model, 43);
    CHECK(a.round == 0);
    CHECK(a.params.size() == 32); // 2 blocks * 4 wires * 4 angles
    CHECK(a.params == b.params);
    CHECK(a.params != c.params);
}

TEST_CASE("local_train with a short dataset takes exactly one optimizer step") {
    Rng rng(1);
    const MlpClassifier model{MlpConfig{{8, 4}}};
    const ClientDataset client{0, random_batch(rng, 10, 8, 4)};

    FLConfig config;
    config.batch_size = 64; // larger than the dataset: one full batch
    config.seed = 5;
    const GlobalModel global = initialize(model, config.seed);

    const LocalUpdate update = local_train(model, client, global, config);
    CHECK(update.n_examples == 10);

    // reference: one Adam step on the full batch (order within the single
    // batch shifts the mean only at rounding level)
    const LossGrad lg = model.loss_and_grad(global.params, client.examples);
    ModelParameters expected = global.params;
    AdamState adam(expected.size());
    adam.step(expected, lg.grad);
    REQUIRE(update.params.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i)
        CHECK(std::abs(update.params[i] - expected[i]) < 1e-12);
    CHECK(std::abs(update.train_loss - lg.loss) < 1e-12);
}

TEST_CASE("a gradient-free model comes back unchanged") {
    Rng rng(2);
    QuantumClassifierConfig qc;
    qc.n_blocks = 0;
    const QuantumClassifier model{qc};
    const ClientDataset client{0, random_batch(rng, 6, 16, 4)};
    FLConfig config;
    const GlobalModel global = initialize(model, config.seed);
    const LocalUpdate update = local_train(model, client, global, config);
    CHECK(update.params == global.params); // both empty
    CHECK(update.params.empty());
}

TEST_CASE("local_train is deterministic for a fixed (client, global, seed)") {
    Rng rng(3);
    const MlpClassifier model{MlpConfig{{16, 8, 4}}};
    const ClientDataset client{2, random_batch(rng, 150, 16, 4)};
    FLConfig config;
    config.batch_size = 32;
    config.local_epochs = 2;
    config.seed = 99;
    GlobalModel global = initialize(model, config.seed);
    global.round = 7;

    const LocalUpdate a = local_train(model, client, global, config);
    const LocalUpdate b = local_train(model, client, global, config);
    CHECK(a.params == b.params); // bitwise
    CHECK(a.train_loss == b.train_loss);
    CHECK(a.n_examples == b.n_examples);
}

TEST_CASE("local_train rejects empty client data") {
    const MlpClassifier model{MlpConfig{{16, 4}}};
    const ClientDataset empty{0, {}};
    FLConfig config;
    const GlobalModel global = initialize(model, config.seed);
    CHECK_THROWS_AS(local_train(model, empty, global, config), ContractError);
}

TEST_CASE("one-client federated training equals the centralized run") {
    Rng rng(4);
    const MlpClassifier model{MlpConfig{{16, 8, 4}}};
    const std::vector<ClientDataset> datasets{{0, random_batch(rng, 90, 16, 4)}};
    const auto test_set = random_batch(rng, 30, 16, 4);

    FLConfig config;
    config.n_clients = 1;
    config.n_rounds = 4;
    config.batch_size = 32;
    config.seed = 1234;

    const ExperimentResult fed =
        run_experiment(model, config, datasets, test_set);

    // centralized: the same seeded shuffles and per-round optimizer resets,
    // driven directly without the aggregator
    ModelParameters params = initialize(model, config.seed).params;
    for (int round = 1; round <= config.n_rounds; ++round) {
        std::vector<Example> shuffled = datasets[0].examples;
        Rng shuffle_rng(derive_seed(config.seed, {kSeedStreamShuffle,
                                                  static_cast<std::uint64_t>(round - 1),
                                                  0, 0}));
        shuffle_rng.shuffle(shuffled);
        AdamState adam(params.size());
        for (std::size_t start = 0; start < shuffled.size();
             start += static_cast<std::size_t>(config.batch_size)) {
            const std::size_t len =
                std::min(static_cast<std::size_t>(config.batch_size),
                         shuffled.size() - start);
            const LossGrad lg = model.loss_and_grad(
                params, std::span<const Example>{shuffled.data() + start, len});
            adam.step(params, lg.grad);
        }
    }

    REQUIRE(fed.final_model.params.size() == params.size());
    for (std::size_t i = 0; i < params.size(); ++i)
        CHECK(std::abs(fed.final_model.params[i] - params[i]) < 1e-12);
}

TEST_CASE("zero rounds yield no metrics and the initial model") {
    Rng rng(5);
    const MlpClassifier model{MlpConfig{{16, 4}}};
    const auto datasets = make_clients(rng, 3, 10, 16, 4);
    const auto test_set = random_batch(rng, 10, 16, 4);
    FLConfig config;
    config.n_clients = 3;
    config.n_rounds = 0;
    const ExperimentResult result = run_experiment(model, config, datasets, test_set);
    CHECK(result.rounds.empty());
    CHECK(result.final_model.round == 0);
    CHECK(result.final_model.params == initialize(model, config.seed).params);
}

TEST_CASE("full runs are bitwise reproducible despite parallel clients") {
    Rng rng(6);
    const QuantumClassifier model{QuantumClassifierConfig{}};
    const auto datasets = make_clients(rng, 4, 20, 16, 4);
    const auto test_set = random_batch(rng, 12, 16, 4);
    FLConfig config;
    config.n_clients = 4;
    config.n_rounds = 2;
    config.batch_size = 8;
    config.model_kind = ModelKind::Quantum;

    const ExperimentResult a = run_experiment(model, config, datasets, test_set);
    const ExperimentResult b = run_experiment(model, config, datasets, test_set);
    REQUIRE(a.rounds.size() == b.rounds.size());
    for (std::size_t i = 0; i < a.rounds.size(); ++i) {
        CHECK(a.rounds[i].train_loss == b.rounds[i].train_loss);
        CHECK(a.rounds[i].test_loss == b.rounds[i].test_loss);
        CHECK(a.rounds[i].test_accuracy == b.rounds[i].test_accuracy);
    }
    CHECK(a.final_model.params == b.final_model.params);
}

TEST_CASE("client order inside a round does not change the aggregate") {
    Rng rng(7);
    const MlpClassifier model{MlpConfig{{16, 4}}};
    auto datasets = make_clients(rng, 3, 15, 16, 4);
    const auto test_set = random_batch(rng, 10, 16, 4);
    FLConfig config;
    config.n_clients = 3;
    config.n_rounds = 2;
    config.batch_size = 8;
    config.model_kind = ModelKind::ClassicalMLP;

    const ExperimentResult a = run_experiment(model, config, datasets, test_set);
    std::swap(datasets[0], datasets[2]); // client_ids travel with their data
    const ExperimentResult b = run_experiment(model, config, datasets, test_set);
    CHECK(a.final_model.params == b.final_model.params);
}

TEST_CASE("clients without data are skipped") {
    Rng rng(8);
    const MlpClassifier model{MlpConfig{{16, 4}}};
    std::vector<ClientDataset> datasets = make_clients(rng, 2, 12, 16, 4);
    datasets.push_back({2, {}});
    const auto test_set = random_batch(rng, 10, 16, 4);
    FLConfig config;
    config.n_clients = 3;
    config.n_rounds = 1;
    const ExperimentResult result = run_experiment(model, config, datasets, test_set);
    CHECK(result.rounds.size() == 1);
    CHECK(std::isfinite(result.rounds[0].test_loss));
}

TEST_CASE("evaluate computes argmax accuracy and mean loss") {
    const MlpClassifier model{MlpConfig{{2, 2}}};
    // identity weights: logits == features, so argmax is the larger feature
    const ModelParameters params{1.0, 0.0, 0.0, 1.0, 0.0, 0.0};
    std::vector<Example> data{{{2.0, 0.0}, 0}, {{0.0, 2.0}, 1}, {{2.0, 0.0}, 1}};
    const EvalResult eval = evaluate(model, params, data);
    CHECK(eval.accuracy == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(eval.loss > 0.0);
    CHECK_THROWS_AS(evaluate(model, params, std::span<const Example>{}), ContractError);
}

TEST_CASE("config validation") {
    FLConfig config;
    config.n_clients = 0;
    CHECK_THROWS_AS(config.validate(), ConfigError);
    config = {};
    config.n_rounds = -1;
    CHECK_THROWS_AS(config.validate(), ConfigError);
    config = {};
    config.batch_size = 0;
    CHECK_THROWS_AS(config.validate(), ConfigError);
    config = {};
    CHECK_NOTHROW(config.validate());
}
