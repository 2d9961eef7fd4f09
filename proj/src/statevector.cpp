#include "qfl/statevector.hpp"

#include <cmath>
#include <string>

#include "qfl/errors.hpp"

namespace qfl {

const char* gate_kind_name(GateKind kind) {
    switch (kind) {
    case GateKind::RX: return "RX";
    case GateKind::RY: return "RY";
    case GateKind::RZ: return "RZ";
    case GateKind::CRX: return "CRX";
    }
    return "?";
}

Mat2 rotation_matrix(GateKind kind, double angle) {
    if (!std::isfinite(angle))
        throw NumericError(std::string("non-finite angle for ") + gate_kind_name(kind));
    const double c = std::cos(angle / 2.0);
    const double s = std::sin(angle / 2.0);
    switch (kind) {
    case GateKind::RX:
    case GateKind::CRX:
        return {{c, 0.0}, {0.0, -s}, {0.0, -s}, {c, 0.0}};
    case GateKind::RY:
        return {{c, 0.0}, {-s, 0.0}, {s, 0.0}, {c, 0.0}};
    case GateKind::RZ:
        return {{c, -s}, {0.0, 0.0}, {0.0, 0.0}, {c, s}};
    }
    throw ContractError("unknown gate kind");
}

Mat2 rotation_matrix_derivative(GateKind kind, double angle) {
    if (!std::isfinite(angle))
        throw NumericError(std::string("non-finite angle for ") + gate_kind_name(kind));
    const double c = 0.5 * std::cos(angle / 2.0);
    const double s = 0.5 * std::sin(angle / 2.0);
    switch (kind) {
    case GateKind::RX:
    case GateKind::CRX:
        return {{-s, 0.0}, {0.0, -c}, {0.0, -c}, {-s, 0.0}};
    case GateKind::RY:
        return {{-s, 0.0}, {-c, 0.0}, {c, 0.0}, {-s, 0.0}};
    case GateKind::RZ:
        return {{-s, -c}, {0.0, 0.0}, {0.0, 0.0}, {-s, c}};
    }
    throw ContractError("unknown gate kind");
}

StateVector::StateVector(int n_wires) : n_wires_(n_wires) {
    if (n_wires < 1 || n_wires > kMaxWires)
        throw ConfigError("n_wires must be in [1, " + std::to_string(kMaxWires) +
                          "], got " + std::to_string(n_wires));
    amps_.assign(std::size_t{1} << n_wires, Complex{0.0, 0.0});
    amps_[0] = Complex{1.0, 0.0};
}

double StateVector::norm_squared() const {
    double acc = 0.0;
    for (const Complex& a : amps_) acc += std::norm(a);
    return acc;
}

std::size_t StateVector::wire_mask(int wire) const {
    if (wire < 0 || wire >= n_wires_)
        throw ContractError("wire " + std::to_string(wire) + " out of range for " +
                            std::to_string(n_wires_) + " wires");
    // wire 0 owns the most significant bit of the basis index
    return std::size_t{1} << (n_wires_ - 1 - wire);
}

double StateVector::expectation_z(int wire) const {
    const std::size_t mask = wire_mask(wire);
    double acc = 0.0;
    for (std::size_t i = 0; i < amps_.size(); ++i)
        acc += (i & mask) ? -std::norm(amps_[i]) : std::norm(amps_[i]);
    return acc;
}

void StateVector::apply_single(int wire, const Mat2& u) {
    const std::size_t mask = wire_mask(wire);
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if (i & mask) continue;
        const Complex a0 = amps_[i];
        const Complex a1 = amps_[i | mask];
        amps_[i] = u.m00 * a0 + u.m01 * a1;
        amps_[i | mask] = u.m10 * a0 + u.m11 * a1;
    }
}

void StateVector::apply_controlled(int control, int target, const Mat2& u) {
    if (control == target)
        throw ContractError("controlled gate requires control != target");
    const std::size_t cmask = wire_mask(control);
    const std::size_t tmask = wire_mask(target);
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if (!(i & cmask) || (i & tmask)) continue;
        const Complex a0 = amps_[i];
        const Complex a1 = amps_[i | tmask];
        amps_[i] = u.m00 * a0 + u.m01 * a1;
        amps_[i | tmask] = u.m10 * a0 + u.m11 * a1;
    }
}

Complex inner_product(const StateVector& a, const StateVector& b) {
    if (a.dim() != b.dim())
        throw ContractError("inner product over mismatched dimensions");
    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < a.dim(); ++i)
        acc += std::conj(a[i]) * b[i];
    return acc;
}

StateVector zero_state(int n_wires) { return StateVector(n_wires); }

} // namespace qfl
