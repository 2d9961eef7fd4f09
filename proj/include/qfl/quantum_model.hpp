#pragma once

#include <cstdint>
#include <span>

#include "qfl/circuit.hpp"
#include "qfl/types.hpp"

namespace qfl {

struct QuantumClassifierConfig {
    int n_wires = 4;
    int n_blocks = 3;    // smallest depth that clears 80% on the bundled corpus
    int n_classes = 4;   // one readout wire per class
    int feature_dim = 16;

    /// Throws ConfigError unless n_classes <= n_wires, feature_dim divides
    /// into whole encoder layers, and the wire count supports a CRX ring.
    void validate() const;
};

/// Builds the classifier circuit:
///   encoder - feature_dim/n_wires layers, layer k rotates every wire by the
///   input feature k*n_wires + wire, with gate kinds cycling RX, RY, RZ over
///   the layers;
///   variational - n_blocks repetitions of per-wire RX, RY, RZ followed by a
///   CRX ring (wire w controls wire (w+1) mod n_wires), every angle a distinct
///   trainable parameter. n_trainable = n_blocks * n_wires * 4.
CircuitSpec build_classifier_circuit(const QuantumClassifierConfig& config);

/// UAV-side quantum classifier: angle encoder, trainable blocks, Z readout.
class QuantumClassifier {
  public:
    explicit QuantumClassifier(QuantumClassifierConfig config);

    const QuantumClassifierConfig& config() const noexcept { return config_; }
    const CircuitSpec& circuit() const noexcept { return circuit_; }
    int param_count() const noexcept { return circuit_.n_trainable; }

    /// Seeded init, each angle uniform on [-pi/8, pi/8].
    ModelParameters init_params(std::uint64_t seed) const;

    /// <Z_w> for the first n_classes wires.
    Logits forward(std::span<const double> params, std::span<const double> features) const;

    /// Mean NLL over the batch and its exact gradient. The softmax/NLL
    /// derivative enters the circuit gradient as per-wire Z coefficients.
    LossGrad loss_and_grad(std::span<const double> params,
                           std::span<const Example> batch) const;

  private:
    QuantumClassifierConfig config_;
    CircuitSpec circuit_;
};

} // namespace qfl
