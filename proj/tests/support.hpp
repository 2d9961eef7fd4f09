#pragma once

// Shared test utilities: independent gradient oracles, random instance
// generators, and IDX file writers. Everything here stays independent of the
// implementation paths it checks: finite differences and parameter-shift
// evaluate the model only through its public forward/loss surface.

#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <vector>

#include "qfl/circuit.hpp"
#include "qfl/rng.hpp"
#include "qfl/types.hpp"

namespace testsup {

// ---- gradient oracles -----------------------------------------------------

/// Central finite differences of a scalar function of a parameter vector.
template <class F>
std::vector<double> central_difference(F&& f, std::vector<double> x, double h) {
    std::vector<double> grad(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] += h;
        const double fp = f(x);
        x[i] -= 2.0 * h;
        const double fm = f(x);
        x[i] += h;
        grad[i] = (fp - fm) / (2.0 * h);
    }
    return grad;
}

inline double expectation_value(const qfl::CircuitSpec& circuit,
                                std::span<const double> params,
                                std::span<const double> inputs,
                                std::span<const double> coeffs) {
    const qfl::StateVector state = qfl::run(circuit, params, inputs);
    double acc = 0.0;
    for (int w = 0; w < circuit.n_wires; ++w)
        acc += coeffs[static_cast<std::size_t>(w)] * state.expectation_z(w);
    return acc;
}

/// Two-term parameter-shift rule. Exact only when every trainable index binds
/// a single one-qubit rotation, so callers must generate circuits that way.
inline std::vector<double> parameter_shift_gradient(const qfl::CircuitSpec& circuit,
                                                    std::vector<double> params,
                                                    std::span<const double> inputs,
                                                    std::span<const double> coeffs) {
    const double shift = std::numbers::pi / 2.0;
    std::vector<double> grad(params.size());
    for (std::size_t i = 0; i < params.size(); ++i) {
        params[i] += shift;
        const double plus = expectation_value(circuit, params, inputs, coeffs);
        params[i] -= 2.0 * shift;
        const double minus = expectation_value(circuit, params, inputs, coeffs);
        params[i] += shift;
        grad[i] = (plus - minus) / 2.0;
    }
    return grad;
}

// ---- random instances -------------------------------------------------------

struct RandomCircuit {
    qfl::CircuitSpec circuit;
    std::vector<double> params;
    std::vector<double> inputs;
};

/// Random circuit over 1..max_wires wires and 1..max_gates gates, with a mix
/// of trainable, input, and constant bindings (each index bound once). When
/// single_qubit_trainables_only is set, CRX gates get constant angles so the
/// parameter-shift oracle applies.
inline RandomCircuit random_circuit(qfl::Rng& rng, int max_wires = 4, int max_gates = 40,
                                    bool single_qubit_trainables_only = false) {
    RandomCircuit rc;
    const int n_wires = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(max_wires)));
    const int n_gates = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(max_gates)));
    rc.circuit.n_wires = n_wires;
    int n_trainable = 0;
    int n_inputs = 0;
    for (int g = 0; g < n_gates; ++g) {
        qfl::GateOp op;
        const int kind_pick = static_cast<int>(rng.next_below(n_wires >= 2 ? 4 : 3));
        op.kind = static_cast<qfl::GateKind>(kind_pick);
        op.wire = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n_wires)));
        if (op.kind == qfl::GateKind::CRX) {
            do {
                op.control = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n_wires)));
            } while (op.control == op.wire);
        }
        const std::uint64_t binding_pick = rng.next_below(10);
        const bool force_constant =
            single_qubit_trainables_only && op.kind == qfl::GateKind::CRX;
        if (binding_pick < 4 && !force_constant)
            op.binding = qfl::ParamBinding::trainable(n_trainable++);
        else if (binding_pick < 7)
            op.binding = qfl::ParamBinding::input(n_inputs++);
        else
            op.binding = qfl::ParamBinding::constant(
                rng.uniform(-std::numbers::pi, std::numbers::pi));
        rc.circuit.ops.push_back(op);
    }
    rc.circuit.finalize();
    for (int i = 0; i < n_trainable; ++i)
        rc.params.push_back(rng.uniform(-std::numbers::pi, std::numbers::pi));
    for (int i = 0; i < n_inputs; ++i)
        rc.inputs.push_back(rng.uniform(-std::numbers::pi, std::numbers::pi));
    return rc;
}

/// Haar-ish random normalized state (uniform amplitudes, renormalized).
inline qfl::StateVector random_state(qfl::Rng& rng, int n_wires) {
    qfl::StateVector state(n_wires);
    double norm = 0.0;
    for (std::size_t i = 0; i < state.dim(); ++i) {
        state[i] = qfl::Complex{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
        norm += std::norm(state[i]);
    }
    const double scale = 1.0 / std::sqrt(norm);
    for (std::size_t i = 0; i < state.dim(); ++i) state[i] *= scale;
    return state;
}

inline std::vector<qfl::Example> random_batch(qfl::Rng& rng, int n, int feature_dim,
                                              int n_classes) {
    std::vector<qfl::Example> batch(static_cast<std::size_t>(n));
    for (qfl::Example& ex : batch) {
        ex.features.resize(static_cast<std::size_t>(feature_dim));
        for (double& f : ex.features) f = rng.uniform(0.0, std::numbers::pi);
        ex.label = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n_classes)));
    }
    return batch;
}

// ---- IDX fixtures -----------------------------------------------------------

inline void write_be32(std::ofstream& out, std::uint32_t v) {
    const unsigned char bytes[4] = {static_cast<unsigned char>(v >> 24),
                                    static_cast<unsigned char>(v >> 16),
                                    static_cast<unsigned char>(v >> 8),
                                    static_cast<unsigned char>(v)};
    out.write(reinterpret_cast<const char*>(bytes), 4);
}

inline void write_idx_images(const std::filesystem::path& path,
                             const std::vector<std::uint8_t>& pixels, std::uint32_t count,
                             std::uint32_t magic = 0x00000803, std::uint32_t rows = 28,
                             std::uint32_t cols = 28) {
    std::ofstream out(path, std::ios::binary);
    write_be32(out, magic);
    write_be32(out, count);
    write_be32(out, rows);
    write_be32(out, cols);
    out.write(reinterpret_cast<const char*>(pixels.data()),
              static_cast<std::streamsize>(pixels.size()));
}

inline void write_idx_labels(const std::filesystem::path& path,
                             const std::vector<std::uint8_t>& labels,
                             std::uint32_t magic = 0x00000801) {
    std::ofstream out(path, std::ios::binary);
    write_be32(out, magic);
    write_be32(out, static_cast<std::uint32_t>(labels.size()));
    out.write(reinterpret_cast<const char*>(labels.data()),
              static_cast<std::streamsize>(labels.size()));
}

inline void truncate_file(const std::filesystem::path& path, std::uintmax_t keep_bytes) {
    std::filesystem::resize_file(path, keep_bytes);
}

/// A small labeled corpus whose images carry class-dependent block patterns,
/// so tiny training runs have real signal. Labels cycle 0..n_classes-1.
inline void write_synthetic_corpus(const std::filesystem::path& images_path,
                                   const std::filesystem::path& labels_path, int count,
                                   int n_classes, std::uint64_t seed) {
    qfl::Rng rng(seed);
    std::vector<std::uint8_t> pixels;
    std::vector<std::uint8_t> labels;
    pixels.reserve(static_cast<std::size_t>(count) * 784);
    for (int i = 0; i < count; ++i) {
        const int label = i % n_classes;
        labels.push_back(static_cast<std::uint8_t>(label));
        for (int r = 0; r < 28; ++r) {
            for (int c = 0; c < 28; ++c) {
                // light up the 7x7 block whose index matches the label
                const int block = (r / 7) * 4 + (c / 7);
                const bool on = block == label * 5; // diagonal blocks 0,5,10,15
                const double noise = rng.uniform(0.0, 60.0);
                pixels.push_back(static_cast<std::uint8_t>(on ? 200.0 + noise / 3.0 : noise));
            }
        }
    }
    write_idx_images(images_path, pixels, static_cast<std::uint32_t>(count));
    write_idx_labels(labels_path, labels);
}

} // namespace testsup
