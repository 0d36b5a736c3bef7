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
#include "qfeo/statevec.hpp"

#include "qfeo/errors.hpp"

#include <cmath>
#include <string>

namespace qfeo::sim {

namespace {

constexpr Complex kI{0.0, 1.0};

std::size_t bit(int q) { return std::size_t{1} << static_cast<unsigned>(q); }

} // namespace

std::string_view gate_name(GateKind kind) {
    switch (kind) {
    case GateKind::RX:
        return "RX";
    case GateKind::RY:
        return "RY";
    case GateKind::RZ:
        return "RZ";
    case GateKind::H:
        return "H";
    case GateKind::P:
        return "P";
    case GateKind::U3:
        return "U3";
    case GateKind::CX:
        return "CX";
    case GateKind::RXX:
        return "RXX";
    case GateKind::RYY:
        return "RYY";
    case GateKind::RZZ:
        return "RZZ";
    case GateKind::CP:
        return "CP";
    }
    return "?";
}

void validate_gate(const Gate &gate, int n_qubits) {
    const int arity = qubit_count(gate.kind);
    for (int k = 0; k < arity; ++k) {
        const int q = gate.qubits[static_cast<std::size_t>(k)];
        if (q < 0 || q >= n_qubits) {
            throw IndexError(std::string(gate_name(gate.kind)) + ": qubit " +
                             std::to_string(q) + " out of range for " +
                             std::to_string(n_qubits) + " qubits");
        }
    }
    if (arity == 2 && gate.qubits[0] == gate.qubits[1]) {
        throw IndexError(std::string(gate_name(gate.kind)) +
                         ": qubit operands must be distinct");
    }
}

void Circuit::add(const Gate &gate) {
    validate_gate(gate, n_qubits);
    gates.push_back(gate);
}

Statevector::Statevector(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw CapacityError("statevector supports 1.." + std::to_string(kMaxQubits) +
                            " qubits, got " + std::to_string(n_qubits));
    }
    amplitudes_.assign(bit(n_qubits), Complex{0.0, 0.0});
    amplitudes_[0] = 1.0;
}

double Statevector::norm() const {
    double s = 0.0;
    for (const auto &a : amplitudes_) {
        s += std::norm(a);
    }
    return std::sqrt(s);
}

std::array<Complex, 4> single_qubit_matrix(const Gate &gate) {
    const double t = gate.angles[0];
    const double c = std::cos(t / 2.0);
    const double s = std::sin(t / 2.0);
    switch (gate.kind) {
    case GateKind::RX:
        return {c, -kI * s, -kI * s, c};
    case GateKind::RY:
        return {c, -s, s, c};
    case GateKind::RZ:
        return {std::exp(-kI * (t / 2.0)), 0.0, 0.0, std::exp(kI * (t / 2.0))};
    case GateKind::H: {
        const double r = 1.0 / std::sqrt(2.0);
        return {r, r, r, -r};
    }
    case GateKind::P:
        return {1.0, 0.0, 0.0, std::exp(kI * t)};
    case GateKind::U3: {
        const double phi = gate.angles[1];
        const double lam = gate.angles[2];
        return {c, -std::exp(kI * lam) * s, std::exp(kI * phi) * s,
                std::exp(kI * (phi + lam)) * c};
    }
    default:
        throw ParameterError(std::string(gate_name(gate.kind)) + " is not a one-qubit gate");
    }
}

std::array<Complex, 16> two_qubit_matrix(const Gate &gate) {
    std::array<Complex, 16> m{};
    const double t = gate.angles[0];
    const double c = std::cos(t / 2.0);
    const double s = std::sin(t / 2.0);
    auto at = [&m](int row, int col) -> Complex & { return m[static_cast<std::size_t>(row * 4 + col)]; };
    switch (gate.kind) {
    case GateKind::CX:
        // control = qubits[0] (local bit 0), target = qubits[1] (local bit 1)
        at(0, 0) = 1.0;
        at(2, 2) = 1.0;
        at(3, 1) = 1.0;
        at(1, 3) = 1.0;
        break;
    case GateKind::CP:
        at(0, 0) = 1.0;
        at(1, 1) = 1.0;
        at(2, 2) = 1.0;
        at(3, 3) = std::exp(kI * t);
        break;
    case GateKind::RZZ:
        at(0, 0) = std::exp(-kI * (t / 2.0));
        at(1, 1) = std::exp(kI * (t / 2.0));
        at(2, 2) = std::exp(kI * (t / 2.0));
        at(3, 3) = std::exp(-kI * (t / 2.0));
        break;
    case GateKind::RXX:
        for (int k = 0; k < 4; ++k) {
            at(k, k) = c;
            at(k, 3 - k) = -kI * s;
        }
        break;
    case GateKind::RYY:
        // Y(x)Y maps |00>->-|11>, |01>->|10>, |10>->|01>, |11>->-|00>
        for (int k = 0; k < 4; ++k) {
            at(k, k) = c;
        }
        at(0, 3) = kI * s;
        at(3, 0) = kI * s;
        at(1, 2) = -kI * s;
        at(2, 1) = -kI * s;
        break;
    default:
        throw ParameterError(std::string(gate_name(gate.kind)) + " is not a two-qubit gate");
    }
    return m;
}

void Statevector::apply_1q(int q, const std::array<Complex, 4> &m) {
    const std::size_t mask = bit(q);
    const std::size_t dim = amplitudes_.size();
    for (std::size_t i = 0; i < dim; ++i) {
        if ((i & mask) != 0U) {
            continue;
        }
        const Complex a0 = amplitudes_[i];
        const Complex a1 = amplitudes_[i | mask];
        amplitudes_[i] = m[0] * a0 + m[1] * a1;
        amplitudes_[i | mask] = m[2] * a0 + m[3] * a1;
    }
}

void Statevector::apply_2q(int q0, int q1, const std::array<Complex, 16> &m) {
    const std::size_t m0 = bit(q0);
    const std::size_t m1 = bit(q1);
    const std::size_t dim = amplitudes_.size();
    for (std::size_t i = 0; i < dim; ++i) {
        if ((i & (m0 | m1)) != 0U) {
            continue;
        }
        const std::array<std::size_t, 4> idx{i, i | m0, i | m1, i | m0 | m1};
        std::array<Complex, 4> in{};
        for (std::size_t k = 0; k < 4; ++k) {
            in[k] = amplitudes_[idx[k]];
        }
        for (std::size_t r = 0; r < 4; ++r) {
            Complex acc{0.0, 0.0};
            for (std::size_t k = 0; k < 4; ++k) {
                acc += m[r * 4 + k] * in[k];
            }
            amplitudes_[idx[r]] = acc;
        }
    }
}

void Statevector::apply_diag_2q(int q0, int q1, const std::array<Complex, 4> &d) {
    const std::size_t m0 = bit(q0);
    const std::size_t m1 = bit(q1);
    const std::size_t dim = amplitudes_.size();
    for (std::size_t i = 0; i < dim; ++i) {
        const std::size_t local = ((i & m0) != 0U ? 1U : 0U) | ((i & m1) != 0U ? 2U : 0U);
        amplitudes_[i] *= d[local];
    }
}

void Statevector::apply(const Gate &gate) {
    validate_gate(gate, n_qubits_);
    switch (gate.kind) {
    case GateKind::CX: {
        const std::size_t mc = bit(gate.qubits[0]);
        const std::size_t mt = bit(gate.qubits[1]);
        const std::size_t dim = amplitudes_.size();
        for (std::size_t i = 0; i < dim; ++i) {
            if ((i & mc) != 0U && (i & mt) == 0U) {
                std::swap(amplitudes_[i], amplitudes_[i | mt]);
            }
        }
        return;
    }
    case GateKind::RZZ:
    case GateKind::CP: {
        const auto m = two_qubit_matrix(gate);
        apply_diag_2q(gate.qubits[0], gate.qubits[1], {m[0], m[5], m[10], m[15]});
        return;
    }
    case GateKind::RXX:
    case GateKind::RYY:
        apply_2q(gate.qubits[0], gate.qubits[1], two_qubit_matrix(gate));
        return;
    default:
        apply_1q(gate.qubits[0], single_qubit_matrix(gate));
        return;
    }
}

Statevector zero_state(int n_qubits) { return Statevector(n_qubits); }

Statevector apply_gate(Statevector state, const Gate &gate) {
    state.apply(gate);
    return state;
}

Statevector run_circuit(const Circuit &circuit) {
    Statevector state(circuit.n_qubits);
    for (const auto &gate : circuit.gates) {
        state.apply(gate);
    }
    return state;
}

std::array<double, 3> bloch_vector(const Statevector &state, int qubit) {
    if (qubit < 0 || qubit >= state.n_qubits()) {
        throw IndexError("expectation: qubit " + std::to_string(qubit) + " out of range");
    }
    const std::size_t mask = bit(qubit);
    const auto amps = state.amplitudes();
    Complex off{0.0, 0.0};
    double z = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & mask) != 0U) {
            continue;
        }
        const Complex a0 = amps[i];
        const Complex a1 = amps[i | mask];
        off += std::conj(a0) * a1;
        z += std::norm(a0) - std::norm(a1);
    }
    // <X> = 2 Re(a0* a1), <Y> = 2 Im(a0* a1), summed over the other qubits.
    return {2.0 * off.real(), 2.0 * off.imag(), z};
}

double pauli_expectation(const Statevector &state, int qubit, Pauli axis) {
    const auto b = bloch_vector(state, qubit);
    switch (axis) {
    case Pauli::X:
        return b[0];
    case Pauli::Y:
        return b[1];
    case Pauli::Z:
        return b[2];
    }
    return 0.0;
}

} // namespace qfeo::sim
