#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "qfl/circuit.hpp"
#include "qfl/errors.hpp"
#include "qfl/statevector.hpp"
#include "support.hpp"

using namespace qfl;
using testsup::random_circuit;
using testsup::random_state;

namespace {
constexpr double kPi = std::numbers::pi;

double max_amplitude_diff(const StateVector& a, const StateVector& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}
} // namespace

TEST_CASE("zero_state puts all weight on |0...0>") {
    const StateVector s1 = zero_state(1);
    CHECK(s1.dim() == 2);
    CHECK(s1[0] == Complex{1.0, 0.0});
    CHECK(s1[1] == Complex{0.0, 0.0});

    const StateVector s2 = zero_state(2);
    CHECK(s2.dim() == 4);
    CHECK(s2[0] == Complex{1.0, 0.0});
    for (std::size_t i = 1; i < 4; ++i) CHECK(s2[i] == Complex{0.0, 0.0});

    const StateVector s4 = zero_state(4);
    CHECK(s4.dim() == 16);
    CHECK(s4.norm_squared() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("zero_state rejects wire counts outside the simulator guard") {
    CHECK_THROWS_AS(zero_state(0), ConfigError);
    CHECK_THROWS_AS(zero_state(-3), ConfigError);
    CHECK_THROWS_AS(zero_state(13), ConfigError);
    CHECK_NOTHROW(zero_state(12));
}

TEST_CASE("RX(0) is the identity") {
    Rng rng(11);
    const StateVector before = random_state(rng, 3);
    const GateOp op{GateKind::RX, 1, -1, ParamBinding::constant(0.0)};
    const StateVector after = apply_gate(before, op, 0.0);
    CHECK(max_amplitude_diff(before, after) < 1e-15);
}

TEST_CASE("RX(pi) flips |0> population entirely") {
    const StateVector s = apply_gate(zero_state(1), {GateKind::RX, 0, -1, {}}, kPi);
    CHECK(s.expectation_z(0) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("wire 0 is the most significant basis bit") {
    // RX(pi) on wire 0 of two wires sends |00> to (-i)|10>: index 0b10 = 2
    const StateVector s = apply_gate(zero_state(2), {GateKind::RX, 0, -1, {}}, kPi);
    CHECK(std::abs(s[2] - Complex{0.0, -1.0}) < 1e-12);
    CHECK(std::abs(s[0]) < 1e-12);
    CHECK(std::abs(s[1]) < 1e-12);
    CHECK(std::abs(s[3]) < 1e-12);
}

TEST_CASE("CRX is inert when the control is |0>") {
    const StateVector before = zero_state(2);
    for (double angle : {0.3, 1.1, kPi, -2.0}) {
        const StateVector after =
            apply_gate(before, {GateKind::CRX, 1, 0, {}}, angle);
        CHECK(max_amplitude_diff(before, after) < 1e-15);
    }
}

TEST_CASE("CRX rotates the target when the control is |1>") {
    // prepare |10> (control = wire 0), then CRX(pi) should take target to |1>
    StateVector s = apply_gate(zero_state(2), {GateKind::RX, 0, -1, {}}, kPi);
    s = apply_gate(s, {GateKind::CRX, 1, 0, {}}, kPi);
    CHECK(s.expectation_z(1) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("gate followed by its inverse restores a random state") {
    Rng rng(42);
    for (int trial = 0; trial < 50; ++trial) {
        const int n_wires = 1 + static_cast<int>(rng.next_below(4));
        const StateVector before = random_state(rng, n_wires);
        GateOp op;
        op.kind = static_cast<GateKind>(rng.next_below(n_wires >= 2 ? 4 : 3));
        op.wire = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n_wires)));
        if (op.kind == GateKind::CRX) {
            do {
                op.control = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n_wires)));
            } while (op.control == op.wire);
        }
        const double angle = rng.uniform(-2.0 * kPi, 2.0 * kPi);
        const StateVector restored = apply_gate(apply_gate(before, op, angle), op, -angle);
        CHECK(max_amplitude_diff(before, restored) < 1e-10);
    }
}

TEST_CASE("RX then its negation restores the state") {
    Rng rng(7);
    const StateVector before = random_state(rng, 2);
    const GateOp op{GateKind::RX, 0, -1, {}};
    const StateVector restored = apply_gate(apply_gate(before, op, 1.3), op, -1.3);
    CHECK(max_amplitude_diff(before, restored) < 1e-10);
}

TEST_CASE("rotations on distinct wires commute") {
    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const StateVector start = random_state(rng, 3);
        const GateOp rz{GateKind::RZ, 0, -1, {}};
        const GateOp rx{GateKind::RX, 2, -1, {}};
        const double a = rng.uniform(-kPi, kPi);
        const double b = rng.uniform(-kPi, kPi);
        const StateVector order1 = apply_gate(apply_gate(start, rz, a), rx, b);
        const StateVector order2 = apply_gate(apply_gate(start, rx, b), rz, a);
        CHECK(max_amplitude_diff(order1, order2) < 1e-12);
    }
}

TEST_CASE("random circuits preserve the norm") {
    Rng rng(2024);
    for (int trial = 0; trial < 60; ++trial) {
        const auto rc = random_circuit(rng);
        const StateVector out = run(rc.circuit, rc.params, rc.inputs);
        CHECK(std::abs(out.norm_squared() - 1.0) < 1e-10);
    }
}

TEST_CASE("expectation_z closed form for RX(theta)|0>") {
    for (double theta : {0.0, kPi / 4.0, kPi / 2.0, kPi}) {
        const StateVector s = apply_gate(zero_state(1), {GateKind::RX, 0, -1, {}}, theta);
        CHECK(s.expectation_z(0) == doctest::Approx(std::cos(theta)).epsilon(1e-12));
    }
}

TEST_CASE("expectation_z of the equal superposition vanishes") {
    const StateVector s = apply_gate(zero_state(1), {GateKind::RX, 0, -1, {}}, kPi / 2.0);
    CHECK(std::abs(s.expectation_z(0)) < 1e-10);
}

TEST_CASE("expectation_z is bounded and equals 1 - 2 P(bit=1)") {
    Rng rng(99);
    for (int trial = 0; trial < 30; ++trial) {
        const int n_wires = 1 + static_cast<int>(rng.next_below(4));
        const StateVector s = random_state(rng, n_wires);
        for (int w = 0; w < n_wires; ++w) {
            const double z = s.expectation_z(w);
            CHECK(z <= 1.0 + 1e-12);
            CHECK(z >= -1.0 - 1e-12);
            double p1 = 0.0;
            const std::size_t mask = s.wire_mask(w);
            for (std::size_t i = 0; i < s.dim(); ++i)
                if (i & mask) p1 += std::norm(s[i]);
            CHECK(z == doctest::Approx(1.0 - 2.0 * p1).epsilon(1e-12));
        }
    }
}

TEST_CASE("wire bounds and angle validity are enforced") {
    const StateVector s = zero_state(2);
    CHECK_THROWS_AS(apply_gate(s, {GateKind::RX, 2, -1, {}}, 0.1), ContractError);
    CHECK_THROWS_AS(apply_gate(s, {GateKind::RX, -1, -1, {}}, 0.1), ContractError);
    CHECK_THROWS_AS(apply_gate(s, {GateKind::CRX, 1, 1, {}}, 0.1), ContractError);
    const double nan = std::nan("");
    CHECK_THROWS_AS(apply_gate(s, {GateKind::RY, 0, -1, {}}, nan), NumericError);
    CHECK_THROWS_AS(apply_gate(s, {GateKind::RZ, 0, -1, {}},
                               std::numeric_limits<double>::infinity()),
                    NumericError);
}
