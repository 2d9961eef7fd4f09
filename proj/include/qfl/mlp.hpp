#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qfl/types.hpp"

namespace qfl {

/// Dense tanh network for the classical baseline. layer_sizes runs from the
/// input width to the class count; the final layer is linear.
struct MlpConfig {
    std::vector<int> layer_sizes{16, 16, 4};

    void validate() const; // ConfigError on fewer than 2 layers or bad sizes
    int param_count() const;
    int feature_dim() const { return layer_sizes.front(); }
    int n_classes() const { return layer_sizes.back(); }
};

class MlpClassifier {
  public:
    explicit MlpClassifier(MlpConfig config);

    const MlpConfig& config() const noexcept { return config_; }
    int param_count() const noexcept { return n_params_; }

    /// Seeded init, each weight uniform on [-1, 1] / sqrt(fan_in).
    ModelParameters init_params(std::uint64_t seed) const;

    Logits forward(std::span<const double> params, std::span<const double> features) const;

    /// Mean NLL over the batch and its gradient by reverse-mode chain rule.
    LossGrad loss_and_grad(std::span<const double> params,
                           std::span<const Example> batch) const;

  private:
    MlpConfig config_;
    int n_params_;
};

} // namespace qfl
