#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qfl/types.hpp"

namespace qfl {

struct AdamConfig {
    double lr = 0.001;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
};

/// Adam with bias correction. One instance owns the moment vectors for one
/// parameter vector; clients create a fresh instance per training round.
class AdamState {
  public:
    explicit AdamState(std::size_t n_params, AdamConfig config = {});

    /// One update in place:
    ///   m <- b1*m + (1-b1)*g,   v <- b2*v + (1-b2)*g^2
    ///   params -= lr * (m / (1-b1^t)) / (sqrt(v / (1-b2^t)) + eps)
    /// Throws ContractError on length mismatch, NumericError on non-finite
    /// gradient entries.
    void step(ModelParameters& params, std::span<const double> grad);

    long step_count() const noexcept { return t_; }
    const AdamConfig& config() const noexcept { return cfg_; }

  private:
    AdamConfig cfg_;
    long t_ = 0;
    std::vector<double> m_;
    std::vector<double> v_;
};

} // namespace qfl
