#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace qfl {

using Complex = std::complex<double>;

/// Simulator guard: dense statevectors above 2^12 amplitudes are refused.
inline constexpr int kMaxWires = 12;

/// 2x2 complex matrix, row-major.
struct Mat2 {
    Complex m00, m01, m10, m11;
};

enum class GateKind { RX, RY, RZ, CRX };

const char* gate_kind_name(GateKind kind);

/// Single-qubit block of the gate in the half-angle convention
/// exp(-i * angle * G / 2) for generator G in {X, Y, Z}. For CRX this is the
/// RX block applied on the control=1 subspace.
Mat2 rotation_matrix(GateKind kind, double angle);

/// Elementwise d/d(angle) of rotation_matrix. Not unitary.
Mat2 rotation_matrix_derivative(GateKind kind, double angle);

/// Dense n-wire pure state.
///
/// Bit ordering: wire 0 is the MOST significant bit of the basis index, so
/// |q0 q1 ... q(n-1)> sits at index q0*2^(n-1) + q1*2^(n-2) + ... + q(n-1).
/// Gate application preserves the norm; treat instances as immutable values
/// once a circuit has produced them (safe to share across threads).
class StateVector {
  public:
    /// |0...0>. Throws ConfigError unless 1 <= n_wires <= kMaxWires.
    explicit StateVector(int n_wires);

    int n_wires() const noexcept { return n_wires_; }
    std::size_t dim() const noexcept { return amps_.size(); }

    std::span<const Complex> amplitudes() const noexcept { return amps_; }
    Complex& operator[](std::size_t i) { return amps_[i]; }
    const Complex& operator[](std::size_t i) const { return amps_[i]; }

    /// Sum of |amplitude|^2 (squared 2-norm).
    double norm_squared() const;

    /// <Z_wire> = P(wire bit = 0) - P(wire bit = 1), in [-1, 1].
    double expectation_z(int wire) const;

    /// Basis-index mask selecting `wire`'s bit. Throws ContractError when the
    /// wire is out of range.
    std::size_t wire_mask(int wire) const;

    /// In-place u applied to one wire: amplitude pairs (i, i|mask) are mixed.
    void apply_single(int wire, const Mat2& u);

    /// In-place u applied to `target` on the subspace where `control` is |1>.
    void apply_controlled(int control, int target, const Mat2& u);

  private:
    int n_wires_;
    std::vector<Complex> amps_;
};

/// <a|b>, conjugate-linear in the first argument.
Complex inner_product(const StateVector& a, const StateVector& b);

/// |0...0> on n_wires.
StateVector zero_state(int n_wires);

} // namespace qfl
