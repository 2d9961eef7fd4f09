#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "qfl/adam.hpp"
#include "qfl/dataset.hpp"
#include "qfl/federated.hpp"
#include "qfl/mlp.hpp"
#include "qfl/quantum_model.hpp"

namespace qfl {

/// Everything one experiment run needs, assembled from a flat key=value
/// config file plus CLI overrides. See config_keys_help() for the key list.
struct ExperimentConfig {
    FLConfig fl;
    QuantumClassifierConfig quantum;
    MlpConfig mlp;
    PartitionScheme partition = PartitionScheme::IID;
    int shards_per_client = 2;
    std::vector<int> classes{0, 1, 2, 3};
    AdamConfig adam;

    std::filesystem::path train_images, train_labels, test_images, test_labels;
    std::filesystem::path out_dir = ".";
    bool record_timing = false; // timing=wall makes metrics.csv non-reproducible

    /// Parses `key=value` lines; '#' starts a comment, blank lines are
    /// skipped. Unknown keys and unparseable values throw ConfigError.
    static ExperimentConfig from_file(const std::filesystem::path& path);

    /// Applies one key=value assignment.
    void set(const std::string& key, const std::string& value);

    /// Points the four dataset paths at the conventional filenames
    /// (train-images-idx3-ubyte, ...) inside dir.
    void use_data_dir(const std::filesystem::path& dir);

    /// Fills unset dataset paths from $QFLSIM_DATA_DIR when available.
    void apply_env_fallback();

    /// Cross-field checks (class count vs model heads, dataset paths set).
    void validate() const;
};

/// One line per recognized config key, for --help and error messages.
std::string config_keys_help();

} // namespace qfl
