#include "qfl/adam.hpp"

#include <cmath>
#include <string>

#include "qfl/errors.hpp"

namespace qfl {

AdamState::AdamState(std::size_t n_params, AdamConfig config)
    : cfg_(config), m_(n_params, 0.0), v_(n_params, 0.0) {
    if (cfg_.lr <= 0.0 || cfg_.epsilon <= 0.0 || cfg_.beta1 <= 0.0 || cfg_.beta1 >= 1.0 ||
        cfg_.beta2 <= 0.0 || cfg_.beta2 >= 1.0)
        throw ConfigError("invalid Adam hyperparameters");
}

void AdamState::step(ModelParameters& params, std::span<const double> grad) {
    if (params.size() != m_.size() || grad.size() != m_.size())
        throw ContractError("Adam step over mismatched lengths (state " +
                            std::to_string(m_.size()) + ", params " +
                            std::to_string(params.size()) + ", grad " +
                            std::to_string(grad.size()) + ")");
    for (double g : grad)
        if (!std::isfinite(g)) throw NumericError("non-finite gradient entry");

    ++t_;
    const double corr1 = 1.0 - std::pow(cfg_.beta1, static_cast<double>(t_));
    const double corr2 = 1.0 - std::pow(cfg_.beta2, static_cast<double>(t_));
    for (std::size_t i = 0; i < m_.size(); ++i) {
        const double g = grad[i];
        m_[i] = cfg_.beta1 * m_[i] + (1.0 - cfg_.beta1) * g;
        v_[i] = cfg_.beta2 * v_[i] + (1.0 - cfg_.beta2) * g * g;
        const double m_hat = m_[i] / corr1;
        const double v_hat = v_[i] / corr2;
        params[i] -= cfg_.lr * m_hat / (std::sqrt(v_hat) + cfg_.epsilon);
    }
}

} // namespace qfl
