#include "qfl/quantum_model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qfl/errors.hpp"
#include "qfl/loss.hpp"
#include "qfl/rng.hpp"

namespace qfl {

void QuantumClassifierConfig::validate() const {
    if (n_wires < 1 || n_wires > kMaxWires)
        throw ConfigError("n_wires must be in [1, " + std::to_string(kMaxWires) + "]");
    if (n_classes < 1 || n_classes > n_wires)
        throw ConfigError("n_classes must be in [1, n_wires]");
    if (n_blocks < 0) throw ConfigError("n_blocks must be >= 0");
    if (feature_dim < 1 || feature_dim % n_wires != 0)
        throw ConfigError("feature_dim must be a positive multiple of n_wires");
    if (n_blocks > 0 && n_wires < 2)
        throw ConfigError("trainable blocks need n_wires >= 2 for the CRX ring");
}

CircuitSpec build_classifier_circuit(const QuantumClassifierConfig& config) {
    config.validate();
    CircuitSpec circuit;
    circuit.n_wires = config.n_wires;

    const GateKind layer_kinds[] = {GateKind::RX, GateKind::RY, GateKind::RZ};
    const int n_layers = config.feature_dim / config.n_wires;
    for (int layer = 0; layer < n_layers; ++layer) {
        const GateKind kind = layer_kinds[layer % 3];
        for (int w = 0; w < config.n_wires; ++w)
            circuit.ops.push_back(
                {kind, w, -1, ParamBinding::input(layer * config.n_wires + w)});
    }

    int next_param = 0;
    for (int block = 0; block < config.n_blocks; ++block) {
        for (GateKind kind : layer_kinds)
            for (int w = 0; w < config.n_wires; ++w)
                circuit.ops.push_back({kind, w, -1, ParamBinding::trainable(next_param++)});
        for (int w = 0; w < config.n_wires; ++w)
            circuit.ops.push_back({GateKind::CRX, (w + 1) % config.n_wires, w,
                                   ParamBinding::trainable(next_param++)});
    }

    circuit.finalize();
    return circuit;
}

QuantumClassifier::QuantumClassifier(QuantumClassifierConfig config)
    : config_(config), circuit_(build_classifier_circuit(config)) {}

ModelParameters QuantumClassifier::init_params(std::uint64_t seed) const {
    Rng rng(seed);
    const double bound = std::numbers::pi / 8.0;
    ModelParameters params(static_cast<std::size_t>(param_count()));
    for (double& p : params) p = rng.uniform(-bound, bound);
    return params;
}

Logits QuantumClassifier::forward(std::span<const double> params,
                                  std::span<const double> features) const {
    const StateVector state = run(circuit_, params, features);
    Logits logits;
    logits.values.reserve(static_cast<std::size_t>(config_.n_classes));
    for (int c = 0; c < config_.n_classes; ++c)
        logits.values.push_back(state.expectation_z(c));
    return logits;
}

LossGrad QuantumClassifier::loss_and_grad(std::span<const double> params,
                                          std::span<const Example> batch) const {
    if (batch.empty()) throw ContractError("loss_and_grad over an empty batch");
    LossGrad out;
    out.grad.assign(static_cast<std::size_t>(param_count()), 0.0);
    std::vector<double> coeffs(static_cast<std::size_t>(config_.n_wires), 0.0);
    for (const Example& ex : batch) {
        const Logits logits = forward(params, ex.features);
        out.loss += nll_loss(logits, ex.label);
        const std::vector<double> dloss = nll_loss_grad(logits, ex.label);
        std::fill(coeffs.begin(), coeffs.end(), 0.0);
        for (int c = 0; c < config_.n_classes; ++c)
            coeffs[static_cast<std::size_t>(c)] = dloss[static_cast<std::size_t>(c)];
        const std::vector<double> g = gradient(circuit_, params, ex.features, coeffs);
        for (std::size_t i = 0; i < g.size(); ++i) out.grad[i] += g[i];
    }
    const double inv = 1.0 / static_cast<double>(batch.size());
    out.loss *= inv;
    for (double& g : out.grad) g *= inv;
    return out;
}

} // namespace qfl
