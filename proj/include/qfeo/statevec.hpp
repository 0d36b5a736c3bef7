// Copyright 2026 The QFEO Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace qfeo::sim {

using Complex = std::complex<double>;

inline constexpr int kMaxQubits = 24;

enum class GateKind { RX, RY, RZ, H, P, U3, CX, RXX, RYY, RZZ, CP };

enum class Pauli { X, Y, Z };

constexpr int qubit_count(GateKind kind) {
    switch (kind) {
    case GateKind::CX:
    case GateKind::RXX:
    case GateKind::RYY:
    case GateKind::RZZ:
    case GateKind::CP:
        return 2;
    default:
        return 1;
    }
}

constexpr int angle_count(GateKind kind) {
    switch (kind) {
    case GateKind::H:
    case GateKind::CX:
        return 0;
    case GateKind::U3:
        return 3;
    default:
        return 1;
    }
}

std::string_view gate_name(GateKind kind);

/// One gate application. For two-qubit gates qubits[0] is the control
/// (CX, CP) or the first operand; unused angle/qubit slots are zero.
struct Gate {
    GateKind kind{GateKind::H};
    std::array<double, 3> angles{};
    std::array<int, 2> qubits{};

    static Gate rx(int q, double theta) { return {GateKind::RX, {theta, 0, 0}, {q, 0}}; }
    static Gate ry(int q, double theta) { return {GateKind::RY, {theta, 0, 0}, {q, 0}}; }
    static Gate rz(int q, double theta) { return {GateKind::RZ, {theta, 0, 0}, {q, 0}}; }
    static Gate h(int q) { return {GateKind::H, {}, {q, 0}}; }
    static Gate p(int q, double lambda) { return {GateKind::P, {lambda, 0, 0}, {q, 0}}; }
    static Gate u3(int q, double theta, double phi, double lambda) {
        return {GateKind::U3, {theta, phi, lambda}, {q, 0}};
    }
    static Gate cx(int control, int target) { return {GateKind::CX, {}, {control, target}}; }
    static Gate rxx(int a, int b, double theta) { return {GateKind::RXX, {theta, 0, 0}, {a, b}}; }
    static Gate ryy(int a, int b, double theta) { return {GateKind::RYY, {theta, 0, 0}, {a, b}}; }
    static Gate rzz(int a, int b, double theta) { return {GateKind::RZZ, {theta, 0, 0}, {a, b}}; }
    static Gate cp(int control, int target, double lambda) {
        return {GateKind::CP, {lambda, 0, 0}, {control, target}};
    }

    bool operator==(const Gate &) const = default;
};

/// Throws IndexError if the gate does not fit an n-qubit register.
void validate_gate(const Gate &gate, int n_qubits);

struct Circuit {
    int n_qubits{1};
    std::vector<Gate> gates;

    explicit Circuit(int n = 1) : n_qubits(n) {}

    /// Validates and appends.
    void add(const Gate &gate);
};

/// Dense statevector; qubit 0 is the least-significant bit of the basis index.
class Statevector {
  public:
    /// |0...0> on n qubits. Throws CapacityError outside [1, kMaxQubits].
    explicit Statevector(int n_qubits);

    int n_qubits() const { return n_qubits_; }
    std::size_t size() const { return amplitudes_.size(); }
    std::span<const Complex> amplitudes() const { return amplitudes_; }
    std::span<Complex> amplitudes() { return amplitudes_; }
    Complex operator[](std::size_t i) const { return amplitudes_[i]; }

    double norm() const;

    /// Applies the gate in place.
    void apply(const Gate &gate);

  private:
    void apply_1q(int q, const std::array<Complex, 4> &m);
    void apply_2q(int q0, int q1, const std::array<Complex, 16> &m);
    void apply_diag_2q(int q0, int q1, const std::array<Complex, 4> &d);

    int n_qubits_;
    std::vector<Complex> amplitudes_;
};

Statevector zero_state(int n_qubits);

/// Observational form: returns the transformed copy.
Statevector apply_gate(Statevector state, const Gate &gate);

Statevector run_circuit(const Circuit &circuit);

/// Exact single-qubit Pauli expectation value.
double pauli_expectation(const Statevector &state, int qubit, Pauli axis);

/// (<X>, <Y>, <Z>) of one qubit in a single pass over the amplitudes.
std::array<double, 3> bloch_vector(const Statevector &state, int qubit);

/// 2x2 (row-major) matrix of a one-qubit gate.
std::array<Complex, 4> single_qubit_matrix(const Gate &gate);

/// 4x4 (row-major) matrix of a two-qubit gate in the local basis
/// |b1 b0>, b0 = bit of qubits[0], b1 = bit of qubits[1].
std::array<Complex, 16> two_qubit_matrix(const Gate &gate);

} // namespace qfeo::sim
