#pragma once

#include <span>

#include "qfl/errors.hpp"
#include "qfl/types.hpp"

namespace qfl {

// This header is the whole aggregator-facing surface. It deliberately knows
// nothing about datasets: clients hand over parameter vectors and example
// counts, never examples.

/// One client's contribution to a round.
struct LocalUpdate {
    int client_id = 0;
    ModelParameters params;
    long n_examples = 0; // aggregation weight numerator
    double train_loss = 0.0;
};

/// The aggregator's model between rounds.
struct GlobalModel {
    int round = 0;
    ModelParameters params;
};

/// Example-count weighted mean of the client parameters:
///   w_G = sum_i (n_i / sum_j n_j) * w_i.
/// Updates are summed in client_id order, so the result is independent of the
/// caller's ordering bit for bit. Throws ProtocolError on an empty list and
/// ContractError on length disagreements or non-positive counts.
ModelParameters aggregate(std::span<const LocalUpdate> updates);

} // namespace qfl
