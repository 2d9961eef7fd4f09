#pragma once

#include <vector>

namespace qfl {

/// Flat vector of trainable weights. Rotation angles for the quantum model,
/// packed dense weights for the MLP baseline; the federated layer treats both
/// uniformly.
using ModelParameters = std::vector<double>;

/// One labeled training example: features are the model inputs (rotation
/// angles in [0, pi] for the quantum encoder), label is a class index.
struct Example {
    std::vector<double> features;
    int label = 0;
};

/// Per-class scores. Z expectations per readout wire for the quantum model
/// (each in [-1, 1]), raw linear outputs for the MLP.
struct Logits {
    std::vector<double> values;
};

/// Loss value together with its gradient w.r.t. the model parameters.
struct LossGrad {
    double loss = 0.0;
    std::vector<double> grad;
};

/// Which client model the federated protocol trains.
enum class ModelKind { Quantum, ClassicalMLP };

inline const char* model_kind_name(ModelKind kind) {
    return kind == ModelKind::Quantum ? "quantum" : "classical";
}

} // namespace qfl
