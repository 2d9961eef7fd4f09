#pragma once

#include <span>
#include <vector>

#include "qfl/statevector.hpp"

namespace qfl {

/// Where a gate's angle comes from when the circuit runs.
struct ParamBinding {
    enum class Kind { Trainable, Input, Constant };

    Kind kind = Kind::Constant;
    int index = 0;      // trainable / input slot
    double value = 0.0; // radians, Constant only

    static ParamBinding trainable(int index) { return {Kind::Trainable, index, 0.0}; }
    static ParamBinding input(int index) { return {Kind::Input, index, 0.0}; }
    static ParamBinding constant(double radians) { return {Kind::Constant, 0, radians}; }
};

struct GateOp {
    GateKind kind = GateKind::RX;
    int wire = 0;      // target wire
    int control = -1;  // CRX only; -1 for single-qubit rotations
    ParamBinding binding;

    bool is_controlled() const { return kind == GateKind::CRX; }
};

/// Ordered gate list over a fixed wire count. Build with finalize() (derives
/// the trainable/input counts) or fill the counts yourself and validate().
struct CircuitSpec {
    int n_wires = 0;
    std::vector<GateOp> ops;
    int n_trainable = 0;
    int n_inputs = 0;

    /// Derives n_trainable / n_inputs from the ops, then validates.
    void finalize();

    /// Checks wire bounds, control != target, and that trainable and input
    /// indices each form the gap-free range [0, count).
    void validate() const;
};

/// Angle for one gate given the bound parameter and input vectors.
double resolve_angle(const GateOp& op, std::span<const double> params,
                     std::span<const double> inputs);

/// Pure single-gate application; the input state is copied.
StateVector apply_gate(const StateVector& state, const GateOp& op, double angle);

/// Applies the circuit to |0...0>.
StateVector run(const CircuitSpec& circuit, std::span<const double> params,
                std::span<const double> inputs);

/// Exact gradient of sum_w observable_coeffs[w] * <Z_w> with respect to each
/// trainable parameter. One forward pass, then a reverse sweep that undoes
/// gates on the ket while the observable-weighted copy follows along; a gate
/// bound to the same trainable index more than once accumulates.
/// observable_coeffs has one entry per wire.
std::vector<double> gradient(const CircuitSpec& circuit, std::span<const double> params,
                             std::span<const double> inputs,
                             std::span<const double> observable_coeffs);

} // namespace qfl
