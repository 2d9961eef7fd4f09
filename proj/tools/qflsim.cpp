#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "qfl/errors.hpp"
#include "qfl/mlp.hpp"
#include "qfl/quantum_model.hpp"
#include "qfl/runner.hpp"
#include "qfl/svg_plot.hpp"

namespace {

namespace fs = std::filesystem;

struct Overrides {
    std::string config_path;
    std::string model;
    std::string out_dir;
    std::uint64_t seed = 0;
    int rounds = 0;
    int clients = 0;
    bool has_seed = false, has_rounds = false, has_clients = false;
};

void add_common_options(CLI::App* cmd, Overrides& ov) {
    cmd->add_option("--config", ov.config_path, "experiment config file (key=value lines)");
    cmd->add_option("--seed", ov.seed, "RNG seed")->each([&](const std::string&) {
        ov.has_seed = true;
    });
    cmd->add_option("--rounds", ov.rounds, "communication rounds")
        ->each([&](const std::string&) { ov.has_rounds = true; });
    cmd->add_option("--clients", ov.clients, "number of clients")
        ->each([&](const std::string&) { ov.has_clients = true; });
    cmd->add_option("--out", ov.out_dir, "output directory");
}

qfl::ExperimentConfig load_config(const Overrides& ov) {
    qfl::ExperimentConfig config;
    if (!ov.config_path.empty())
        config = qfl::ExperimentConfig::from_file(ov.config_path);
    if (ov.has_seed) config.fl.seed = ov.seed;
    if (ov.has_rounds) config.fl.n_rounds = ov.rounds;
    if (ov.has_clients) config.fl.n_clients = ov.clients;
    if (!ov.out_dir.empty()) config.out_dir = ov.out_dir;
    if (!ov.model.empty())
        config.fl.model_kind =
            ov.model == "quantum" ? qfl::ModelKind::Quantum : qfl::ModelKind::ClassicalMLP;
    config.apply_env_fallback();
    return config;
}

void write_outputs(const qfl::ExperimentConfig& config,
                   const std::vector<qfl::RoundMetrics>& metrics, bool charts) {
    fs::create_directories(config.out_dir);
    const fs::path csv = config.out_dir / "metrics.csv";
    qfl::write_metrics_csv(csv, metrics);
    std::cout << "wrote " << csv.string() << "\n";
    if (charts && !metrics.empty()) {
        qfl::write_comparison_charts(metrics, config.out_dir);
        std::cout << "wrote " << (config.out_dir / "accuracy.svg").string() << "\n";
        std::cout << "wrote " << (config.out_dir / "loss.svg").string() << "\n";
    }
}

int cmd_run(const Overrides& ov, bool both_models) {
    qfl::ExperimentConfig config = load_config(ov);
    config.validate();
    const qfl::PreparedData data = qfl::prepare_data(config);
    std::cerr << "train examples: ";
    std::size_t total = 0;
    for (const auto& c : data.clients) total += c.examples.size();
    std::cerr << total << " across " << data.clients.size() << " clients; test examples: "
              << data.test_set.size() << "\n";

    std::vector<qfl::RoundMetrics> metrics;
    if (both_models) {
        metrics = qfl::run_comparison(config, data);
        std::cout << "model sizes: quantum "
                  << qfl::QuantumClassifier(config.quantum).param_count() << " params, classical "
                  << qfl::MlpClassifier(config.mlp).param_count() << " params\n";
    } else {
        metrics = qfl::run_model(config, config.fl.model_kind, data);
    }
    write_outputs(config, metrics, both_models);
    return 0;
}

int cmd_validate_data(const Overrides& ov) {
    qfl::ExperimentConfig config = load_config(ov);
    if (config.train_images.empty())
        throw qfl::ConfigError("dataset paths not set: pass --config with data_dir or set "
                               "QFLSIM_DATA_DIR");
    const qfl::RawDataset train = qfl::load_idx(config.train_images, config.train_labels);
    const qfl::RawDataset test = qfl::load_idx(config.test_images, config.test_labels);
    std::cout << "train: " << train.count() << " examples, " << train.rows << "x"
              << train.cols << "\n";
    std::cout << "test: " << test.count() << " examples, " << test.rows << "x" << test.cols
              << "\n";
    return 0;
}

int cmd_plot(const std::string& metrics_path, const Overrides& ov) {
    const auto metrics = qfl::read_metrics_csv(metrics_path);
    fs::path out = ov.out_dir.empty() ? fs::path(metrics_path).parent_path()
                                      : fs::path(ov.out_dir);
    if (out.empty()) out = ".";
    qfl::write_comparison_charts(metrics, out);
    std::cout << "wrote " << (out / "accuracy.svg").string() << "\n";
    std::cout << "wrote " << (out / "loss.svg").string() << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"qflsim: federated training of a variational quantum classifier vs a "
                 "classical MLP over simulated edge clients"};
    app.require_subcommand(1);

    Overrides ov;
    std::string metrics_path;

    CLI::App* run = app.add_subcommand("run", "train both models and write the comparison "
                                              "CSV and charts");
    add_common_options(run, ov);

    CLI::App* run_one = app.add_subcommand("run-one", "train a single model kind");
    add_common_options(run_one, ov);
    run_one->add_option("--model", ov.model, "quantum|classical")
        ->check(CLI::IsMember({"quantum", "classical"}));

    CLI::App* validate = app.add_subcommand("validate-data", "load and check the IDX files");
    add_common_options(validate, ov);

    CLI::App* plot = app.add_subcommand("plot", "render charts from an existing metrics CSV");
    add_common_options(plot, ov);
    plot->add_option("--metrics", metrics_path, "metrics.csv produced by run")->required();

    try {
        app.parse(argc, argv);
        if (run->parsed()) return cmd_run(ov, true);
        if (run_one->parsed()) return cmd_run(ov, false);
        if (validate->parsed()) return cmd_validate_data(ov);
        if (plot->parsed()) return cmd_plot(metrics_path, ov);
        return 2;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2; // usage problems are config errors
    } catch (const qfl::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const qfl::IngestError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 3;
    } catch (const qfl::NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
