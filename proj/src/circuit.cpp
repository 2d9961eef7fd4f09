#include "qfl/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "qfl/errors.hpp"

namespace qfl {

namespace {

// Checks that the collected binding indices are exactly [0, count).
void check_gap_free(std::vector<int> indices, const char* what, int expected_count) {
    std::sort(indices.begin(), indices.end());
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
    const int count = static_cast<int>(indices.size());
    if (count != expected_count)
        throw ContractError(std::string(what) + " index count " + std::to_string(count) +
                            " does not match declared " + std::to_string(expected_count));
    for (int i = 0; i < count; ++i)
        if (indices[static_cast<std::size_t>(i)] != i)
            throw ContractError(std::string(what) + " indices are not gap-free");
}

void apply_inplace(StateVector& state, const GateOp& op, double angle) {
    const Mat2 u = rotation_matrix(op.kind, angle);
    if (op.is_controlled())
        state.apply_controlled(op.control, op.wire, u);
    else
        state.apply_single(op.wire, u);
}

void apply_inverse_inplace(StateVector& state, const GateOp& op, double angle) {
    // every supported gate is a rotation, so the inverse is the negated angle
    apply_inplace(state, op, -angle);
}

// mu = (dU/dtheta) psi. For CRX the derivative vanishes on the control=0
// subspace, so those components are zeroed after the block application.
StateVector apply_derivative(const StateVector& psi, const GateOp& op, double angle) {
    const Mat2 d = rotation_matrix_derivative(op.kind, angle);
    StateVector mu = psi;
    if (op.is_controlled()) {
        mu.apply_controlled(op.control, op.wire, d);
        const std::size_t cmask = mu.wire_mask(op.control);
        for (std::size_t i = 0; i < mu.dim(); ++i)
            if (!(i & cmask)) mu[i] = Complex{0.0, 0.0};
    } else {
        mu.apply_single(op.wire, d);
    }
    return mu;
}

// lambda = H psi for the diagonal observable H = sum_w coeffs[w] * Z_w.
StateVector apply_observable(const StateVector& psi, std::span<const double> coeffs) {
    StateVector lambda = psi;
    const int n = psi.n_wires();
    for (std::size_t i = 0; i < lambda.dim(); ++i) {
        double h = 0.0;
        for (int w = 0; w < n; ++w) {
            const std::size_t mask = std::size_t{1} << (n - 1 - w);
            h += (i & mask) ? -coeffs[static_cast<std::size_t>(w)]
                            : coeffs[static_cast<std::size_t>(w)];
        }
        lambda[i] *= h;
    }
    return lambda;
}

} // namespace

void CircuitSpec::finalize() {
    int max_trainable = -1;
    int max_input = -1;
    for (const GateOp& op : ops) {
        if (op.binding.kind == ParamBinding::Kind::Trainable)
            max_trainable = std::max(max_trainable, op.binding.index);
        else if (op.binding.kind == ParamBinding::Kind::Input)
            max_input = std::max(max_input, op.binding.index);
    }
    n_trainable = max_trainable + 1;
    n_inputs = max_input + 1;
    validate();
}

void CircuitSpec::validate() const {
    if (n_wires < 1 || n_wires > kMaxWires)
        throw ConfigError("circuit n_wires must be in [1, " + std::to_string(kMaxWires) +
                          "], got " + std::to_string(n_wires));
    std::vector<int> trainable;
    std::vector<int> input;
    for (const GateOp& op : ops) {
        if (op.wire < 0 || op.wire >= n_wires)
            throw ContractError("gate wire " + std::to_string(op.wire) + " out of range");
        if (op.is_controlled()) {
            if (op.control < 0 || op.control >= n_wires)
                throw ContractError("control wire " + std::to_string(op.control) +
                                    " out of range");
            if (op.control == op.wire)
                throw ContractError("CRX control and target must differ");
        }
        switch (op.binding.kind) {
        case ParamBinding::Kind::Trainable:
            if (op.binding.index < 0 || op.binding.index >= n_trainable)
                throw ContractError("trainable index out of range");
            trainable.push_back(op.binding.index);
            break;
        case ParamBinding::Kind::Input:
            if (op.binding.index < 0 || op.binding.index >= n_inputs)
                throw ContractError("input index out of range");
            input.push_back(op.binding.index);
            break;
        case ParamBinding::Kind::Constant:
            break;
        }
    }
    check_gap_free(std::move(trainable), "trainable", n_trainable);
    check_gap_free(std::move(input), "input", n_inputs);
}

double resolve_angle(const GateOp& op, std::span<const double> params,
                     std::span<const double> inputs) {
    switch (op.binding.kind) {
    case ParamBinding::Kind::Trainable:
        return params[static_cast<std::size_t>(op.binding.index)];
    case ParamBinding::Kind::Input:
        return inputs[static_cast<std::size_t>(op.binding.index)];
    case ParamBinding::Kind::Constant:
        return op.binding.value;
    }
    throw ContractError("unknown binding kind");
}

StateVector apply_gate(const StateVector& state, const GateOp& op, double angle) {
    StateVector out = state;
    apply_inplace(out, op, angle);
    return out;
}

StateVector run(const CircuitSpec& circuit, std::span<const double> params,
                std::span<const double> inputs) {
    if (static_cast<int>(params.size()) != circuit.n_trainable)
        throw ContractError("expected " + std::to_string(circuit.n_trainable) +
                            " params, got " + std::to_string(params.size()));
    if (static_cast<int>(inputs.size()) != circuit.n_inputs)
        throw ContractError("expected " + std::to_string(circuit.n_inputs) +
                            " inputs, got " + std::to_string(inputs.size()));
    StateVector state(circuit.n_wires);
    for (const GateOp& op : circuit.ops)
        apply_inplace(state, op, resolve_angle(op, params, inputs));
    return state;
}

std::vector<double> gradient(const CircuitSpec& circuit, std::span<const double> params,
                             std::span<const double> inputs,
                             std::span<const double> observable_coeffs) {
    if (static_cast<int>(observable_coeffs.size()) != circuit.n_wires)
        throw ContractError("expected one observable coefficient per wire");

    StateVector psi = run(circuit, params, inputs);
    StateVector lambda = apply_observable(psi, observable_coeffs);

    std::vector<double> grad(static_cast<std::size_t>(circuit.n_trainable), 0.0);
    for (std::size_t k = circuit.ops.size(); k-- > 0;) {
        const GateOp& op = circuit.ops[k];
        const double angle = resolve_angle(op, params, inputs);
        apply_inverse_inplace(psi, op, angle); // psi is now the state before op
        if (op.binding.kind == ParamBinding::Kind::Trainable) {
            const StateVector mu = apply_derivative(psi, op, angle);
            grad[static_cast<std::size_t>(op.binding.index)] +=
                2.0 * inner_product(lambda, mu).real();
        }
        apply_inverse_inplace(lambda, op, angle);
    }
    return grad;
}

} // namespace qfl
