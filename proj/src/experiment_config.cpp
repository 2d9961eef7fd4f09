#include "qfl/experiment_config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "qfl/errors.hpp"

namespace qfl {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

long long parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': expected integer, got '" + value + "'");
    }
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const std::uint64_t v = std::stoull(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': expected unsigned integer, got '" +
                          value + "'");
    }
}

double parse_real(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': expected real, got '" + value + "'");
    }
}

std::vector<int> parse_int_list(const std::string& key, const std::string& value) {
    std::vector<int> out;
    std::istringstream in(value);
    std::string item;
    while (std::getline(in, item, ','))
        out.push_back(static_cast<int>(parse_int(key, trim(item))));
    if (out.empty()) throw ConfigError("config key '" + key + "': expected a list");
    return out;
}

} // namespace

void ExperimentConfig::set(const std::string& key, const std::string& value) {
    if (key == "n_clients") fl.n_clients = static_cast<int>(parse_int(key, value));
    else if (key == "n_rounds") fl.n_rounds = static_cast<int>(parse_int(key, value));
    else if (key == "local_epochs") fl.local_epochs = static_cast<int>(parse_int(key, value));
    else if (key == "batch_size") fl.batch_size = static_cast<int>(parse_int(key, value));
    else if (key == "seed") fl.seed = parse_u64(key, value);
    else if (key == "model") {
        if (value == "quantum") fl.model_kind = ModelKind::Quantum;
        else if (value == "classical") fl.model_kind = ModelKind::ClassicalMLP;
        else throw ConfigError("config key 'model': expected quantum|classical, got '" +
                               value + "'");
    } else if (key == "n_wires") quantum.n_wires = static_cast<int>(parse_int(key, value));
    else if (key == "n_blocks") quantum.n_blocks = static_cast<int>(parse_int(key, value));
    else if (key == "n_classes") quantum.n_classes = static_cast<int>(parse_int(key, value));
    else if (key == "feature_dim") quantum.feature_dim = static_cast<int>(parse_int(key, value));
    else if (key == "mlp_layers") mlp.layer_sizes = parse_int_list(key, value);
    else if (key == "learning_rate") adam.lr = parse_real(key, value);
    else if (key == "classes") classes = parse_int_list(key, value);
    else if (key == "partition") {
        if (value == "iid") partition = PartitionScheme::IID;
        else if (value == "label-shards") partition = PartitionScheme::LabelShards;
        else throw ConfigError("config key 'partition': expected iid|label-shards, got '" +
                               value + "'");
    } else if (key == "shards_per_client")
        shards_per_client = static_cast<int>(parse_int(key, value));
    else if (key == "data_dir") use_data_dir(value);
    else if (key == "train_images") train_images = value;
    else if (key == "train_labels") train_labels = value;
    else if (key == "test_images") test_images = value;
    else if (key == "test_labels") test_labels = value;
    else if (key == "out_dir") out_dir = value;
    else if (key == "timing") {
        if (value == "off") record_timing = false;
        else if (value == "wall") record_timing = true;
        else throw ConfigError("config key 'timing': expected off|wall, got '" + value + "'");
    } else
        throw ConfigError("unknown config key '" + key + "'\n" + config_keys_help());
}

ExperimentConfig ExperimentConfig::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    ExperimentConfig config;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path.string() + ":" + std::to_string(line_no) +
                              ": expected key=value, got '" + line + "'");
        config.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return config;
}

void ExperimentConfig::use_data_dir(const std::filesystem::path& dir) {
    train_images = dir / "train-images-idx3-ubyte";
    train_labels = dir / "train-labels-idx1-ubyte";
    test_images = dir / "t10k-images-idx3-ubyte";
    test_labels = dir / "t10k-labels-idx1-ubyte";
}

void ExperimentConfig::apply_env_fallback() {
    if (!train_images.empty()) return;
    if (const char* dir = std::getenv("QFLSIM_DATA_DIR"); dir && *dir) use_data_dir(dir);
}

void ExperimentConfig::validate() const {
    fl.validate();
    quantum.validate();
    mlp.validate();
    if (adam.lr <= 0.0) throw ConfigError("learning_rate must be > 0");
    if (classes.empty()) throw ConfigError("classes must be non-empty");
    if (static_cast<int>(classes.size()) != quantum.n_classes)
        throw ConfigError("n_classes (" + std::to_string(quantum.n_classes) +
                          ") must match the classes list (" +
                          std::to_string(classes.size()) + " entries)");
    if (mlp.n_classes() != static_cast<int>(classes.size()))
        throw ConfigError("mlp_layers must end with the class count");
    if (quantum.feature_dim != 16 || mlp.feature_dim() != 16)
        throw ConfigError("the 28x28 pipeline produces 16 features; feature_dim and the "
                          "first MLP layer must be 16");
    if (shards_per_client < 1) throw ConfigError("shards_per_client must be >= 1");
    if (train_images.empty() || train_labels.empty() || test_images.empty() ||
        test_labels.empty())
        throw ConfigError("dataset paths not set: pass data_dir/train_images/... in the "
                          "config or set QFLSIM_DATA_DIR");
}

std::string config_keys_help() {
    return "recognized config keys:\n"
           "  n_clients, n_rounds, local_epochs, batch_size, seed\n"
           "  model            quantum|classical\n"
           "  n_wires, n_blocks, n_classes, feature_dim\n"
           "  mlp_layers       comma list, e.g. 16,16,4\n"
           "  learning_rate\n"
           "  classes          comma list of digit labels, e.g. 0,1,2,3\n"
           "  partition        iid|label-shards\n"
           "  shards_per_client\n"
           "  data_dir or train_images/train_labels/test_images/test_labels\n"
           "  out_dir\n"
           "  timing           off|wall (wall makes metrics.csv non-reproducible)\n";
}

} // namespace qfl
