#pragma once

#include <span>
#include <vector>

#include "qfl/types.hpp"

namespace qfl {

/// log_softmax(x)_c = x_c - log sum_j exp(x_j), stabilized by subtracting
/// max(x) before exponentiating.
std::vector<double> log_softmax(std::span<const double> logits);

/// softmax(x), via log_softmax.
std::vector<double> softmax(std::span<const double> logits);

/// Negative log likelihood of `label` under log_softmax(logits). Throws
/// ContractError when the label is out of range.
double nll_loss(const Logits& logits, int label);

/// d nll / d logits = softmax(logits) - onehot(label).
std::vector<double> nll_loss_grad(const Logits& logits, int label);

} // namespace qfl
