#include "qfl/loss.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qfl/errors.hpp"

namespace qfl {

std::vector<double> log_softmax(std::span<const double> logits) {
    if (logits.empty()) throw ContractError("log_softmax over empty logits");
    const double m = *std::max_element(logits.begin(), logits.end());
    double sum = 0.0;
    for (double v : logits) sum += std::exp(v - m);
    const double lse = m + std::log(sum);
    std::vector<double> out(logits.size());
    for (std::size_t i = 0; i < logits.size(); ++i) out[i] = logits[i] - lse;
    return out;
}

std::vector<double> softmax(std::span<const double> logits) {
    std::vector<double> out = log_softmax(logits);
    for (double& v : out) v = std::exp(v);
    return out;
}

double nll_loss(const Logits& logits, int label) {
    if (label < 0 || label >= static_cast<int>(logits.values.size()))
        throw ContractError("label " + std::to_string(label) + " out of range for " +
                            std::to_string(logits.values.size()) + " classes");
    return -log_softmax(logits.values)[static_cast<std::size_t>(label)];
}

std::vector<double> nll_loss_grad(const Logits& logits, int label) {
    if (label < 0 || label >= static_cast<int>(logits.values.size()))
        throw ContractError("label " + std::to_string(label) + " out of range for " +
                            std::to_string(logits.values.size()) + " classes");
    std::vector<double> g = softmax(logits.values);
    g[static_cast<std::size_t>(label)] -= 1.0;
    return g;
}

} // namespace qfl
