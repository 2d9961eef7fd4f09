#include "qfl/mlp.hpp"

#include <cmath>
#include <string>

#include "qfl/errors.hpp"
#include "qfl/loss.hpp"
#include "qfl/rng.hpp"

namespace qfl {

namespace {

// Offset of layer j's weight block in the flat vector. Layout per layer:
// W (fan_out x fan_in, row-major) then bias (fan_out).
struct LayerView {
    std::size_t w_off;
    std::size_t b_off;
    int fan_in;
    int fan_out;
};

std::vector<LayerView> layout(const MlpConfig& cfg) {
    std::vector<LayerView> views;
    std::size_t off = 0;
    for (std::size_t j = 1; j < cfg.layer_sizes.size(); ++j) {
        const int fan_in = cfg.layer_sizes[j - 1];
        const int fan_out = cfg.layer_sizes[j];
        views.push_back({off, off + static_cast<std::size_t>(fan_in) * fan_out,
                         fan_in, fan_out});
        off += static_cast<std::size_t>(fan_in + 1) * fan_out;
    }
    return views;
}

} // namespace

void MlpConfig::validate() const {
    if (layer_sizes.size() < 2)
        throw ConfigError("MLP needs at least an input and an output layer");
    for (int s : layer_sizes)
        if (s < 1) throw ConfigError("MLP layer sizes must be positive");
}

int MlpConfig::param_count() const {
    int count = 0;
    for (std::size_t j = 1; j < layer_sizes.size(); ++j)
        count += (layer_sizes[j - 1] + 1) * layer_sizes[j];
    return count;
}

MlpClassifier::MlpClassifier(MlpConfig config)
    : config_(std::move(config)), n_params_(0) {
    config_.validate();
    n_params_ = config_.param_count();
}

ModelParameters MlpClassifier::init_params(std::uint64_t seed) const {
    Rng rng(seed);
    ModelParameters params(static_cast<std::size_t>(n_params_));
    std::size_t i = 0;
    for (const LayerView& layer : layout(config_)) {
        const double scale = 1.0 / std::sqrt(static_cast<double>(layer.fan_in));
        const std::size_t n = static_cast<std::size_t>(layer.fan_in + 1) * layer.fan_out;
        for (std::size_t k = 0; k < n; ++k) params[i++] = rng.uniform(-scale, scale);
    }
    return params;
}

Logits MlpClassifier::forward(std::span<const double> params,
                              std::span<const double> features) const {
    if (static_cast<int>(params.size()) != n_params_)
        throw ContractError("expected " + std::to_string(n_params_) + " params, got " +
                            std::to_string(params.size()));
    if (static_cast<int>(features.size()) != config_.feature_dim())
        throw ContractError("expected " + std::to_string(config_.feature_dim()) +
                            " features, got " + std::to_string(features.size()));

    const std::vector<LayerView> views = layout(config_);
    std::vector<double> a(features.begin(), features.end());
    for (std::size_t j = 0; j < views.size(); ++j) {
        const LayerView& l = views[j];
        std::vector<double> z(static_cast<std::size_t>(l.fan_out));
        for (int r = 0; r < l.fan_out; ++r) {
            double acc = params[l.b_off + static_cast<std::size_t>(r)];
            const std::size_t row = l.w_off + static_cast<std::size_t>(r) * l.fan_in;
            for (int c = 0; c < l.fan_in; ++c)
                acc += params[row + static_cast<std::size_t>(c)] *
                       a[static_cast<std::size_t>(c)];
            z[static_cast<std::size_t>(r)] = acc;
        }
        if (j + 1 < views.size())
            for (double& v : z) v = std::tanh(v);
        a = std::move(z);
    }
    return Logits{std::move(a)};
}

LossGrad MlpClassifier::loss_and_grad(std::span<const double> params,
                                      std::span<const Example> batch) const {
    if (batch.empty()) throw ContractError("loss_and_grad over an empty batch");
    if (static_cast<int>(params.size()) != n_params_)
        throw ContractError("expected " + std::to_string(n_params_) + " params, got " +
                            std::to_string(params.size()));

    const std::vector<LayerView> views = layout(config_);
    LossGrad out;
    out.grad.assign(static_cast<std::size_t>(n_params_), 0.0);

    for (const Example& ex : batch) {
        if (static_cast<int>(ex.features.size()) != config_.feature_dim())
            throw ContractError("example feature width mismatch");

        // forward, keeping every layer activation for the backward pass
        std::vector<std::vector<double>> acts;
        acts.reserve(views.size() + 1);
        acts.emplace_back(ex.features.begin(), ex.features.end());
        for (std::size_t j = 0; j < views.size(); ++j) {
            const LayerView& l = views[j];
            std::vector<double> z(static_cast<std::size_t>(l.fan_out));
            for (int r = 0; r < l.fan_out; ++r) {
                double acc = params[l.b_off + static_cast<std::size_t>(r)];
                const std::size_t row = l.w_off + static_cast<std::size_t>(r) * l.fan_in;
                for (int c = 0; c < l.fan_in; ++c)
                    acc += params[row + static_cast<std::size_t>(c)] *
                           acts.back()[static_cast<std::size_t>(c)];
                z[static_cast<std::size_t>(r)] = acc;
            }
            if (j + 1 < views.size())
                for (double& v : z) v = std::tanh(v);
            acts.push_back(std::move(z));
        }

        const Logits logits{acts.back()};
        out.loss += nll_loss(logits, ex.label);

        // backward
        std::vector<double> delta = nll_loss_grad(logits, ex.label);
        for (std::size_t j = views.size(); j-- > 0;) {
            const LayerView& l = views[j];
            const std::vector<double>& a_prev = acts[j];
            for (int r = 0; r < l.fan_out; ++r) {
                const double d = delta[static_cast<std::size_t>(r)];
                out.grad[l.b_off + static_cast<std::size_t>(r)] += d;
                const std::size_t row = l.w_off + static_cast<std::size_t>(r) * l.fan_in;
                for (int c = 0; c < l.fan_in; ++c)
                    out.grad[row + static_cast<std::size_t>(c)] +=
                        d * a_prev[static_cast<std::size_t>(c)];
            }
            if (j == 0) break;
            // propagate through W^T and the tanh of the previous layer
            std::vector<double> prev(static_cast<std::size_t>(l.fan_in), 0.0);
            for (int r = 0; r < l.fan_out; ++r) {
                const double d = delta[static_cast<std::size_t>(r)];
                const std::size_t row = l.w_off + static_cast<std::size_t>(r) * l.fan_in;
                for (int c = 0; c < l.fan_in; ++c)
                    prev[static_cast<std::size_t>(c)] +=
                        params[row + static_cast<std::size_t>(c)] * d;
            }
            for (int c = 0; c < l.fan_in; ++c) {
                const double t = a_prev[static_cast<std::size_t>(c)];
                prev[static_cast<std::size_t>(c)] *= 1.0 - t * t;
            }
            delta = std::move(prev);
        }
    }

    const double inv = 1.0 / static_cast<double>(batch.size());
    out.loss *= inv;
    for (double& g : out.grad) g *= inv;
    return out;
}

} // namespace qfl
