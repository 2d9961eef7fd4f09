#include "qfl/fedavg.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

#include "qfl/errors.hpp"

namespace qfl {

ModelParameters aggregate(std::span<const LocalUpdate> updates) {
    if (updates.empty()) throw ProtocolError("aggregate over an empty update list");

    std::vector<const LocalUpdate*> ordered;
    ordered.reserve(updates.size());
    for (const LocalUpdate& u : updates) {
        if (u.n_examples <= 0) throw ContractError("update with non-positive example count");
        if (u.params.size() != updates.front().params.size())
            throw ContractError("updates with mismatched parameter lengths");
        ordered.push_back(&u);
    }
    std::sort(ordered.begin(), ordered.end(),
              [](const LocalUpdate* a, const LocalUpdate* b) {
                  return a->client_id < b->client_id;
              });

    double total = 0.0;
    for (const LocalUpdate* u : ordered) total += static_cast<double>(u->n_examples);

    ModelParameters global(updates.front().params.size(), 0.0);
    for (const LocalUpdate* u : ordered) {
        const double weight = static_cast<double>(u->n_examples) / total;
        for (std::size_t i = 0; i < global.size(); ++i)
            global[i] += weight * u->params[i];
    }
    return global;
}

} // namespace qfl
