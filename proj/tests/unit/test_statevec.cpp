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
#include "qfeo/errors.hpp"
#include "qfeo/rng.hpp"
#include "qfeo/statevec.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace qfeo::sim;

namespace {

double max_diff(const Statevector &s, const oracle::Vec &v) {
    double worst = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        worst = std::max(worst, std::abs(s[i] - v(static_cast<Eigen::Index>(i))));
    }
    return worst;
}

} // namespace

TEST_CASE("zero state") {
    const auto s2 = zero_state(2);
    REQUIRE(s2.size() == 4);
    CHECK(s2[0] == Complex(1, 0));
    CHECK(s2[1] == Complex(0, 0));
    CHECK(s2[3] == Complex(0, 0));
    CHECK(zero_state(1).size() == 2);
    CHECK_THROWS_AS(zero_state(25), qfeo::CapacityError);
    CHECK_THROWS_AS(zero_state(0), qfeo::CapacityError);
}

TEST_CASE("single gates on small states") {
    const auto ry = apply_gate(zero_state(1), Gate::ry(0, std::numbers::pi / 2));
    CHECK(ry[0].real() == doctest::Approx(0.70710678).epsilon(1e-8));
    CHECK(ry[1].real() == doctest::Approx(0.70710678).epsilon(1e-8));

    // |01>: qubit 0 set, basis index 1.
    auto s = apply_gate(zero_state(2), Gate::rx(0, std::numbers::pi));
    s = apply_gate(s, Gate::cx(0, 1));
    CHECK(std::abs(s[3]) == doctest::Approx(1.0));
    CHECK(std::abs(s[1]) < 1e-15);

    const double theta = 0.83;
    const auto z = apply_gate(zero_state(2), Gate::rzz(0, 1, theta));
    CHECK(std::abs(z[0] - std::exp(Complex(0, -theta / 2))) < 1e-15);
    for (std::size_t i = 1; i < 4; ++i) {
        CHECK(std::abs(z[i]) == 0.0);
    }
}

TEST_CASE("circuit runs") {
    const auto empty = run_circuit(Circuit(3));
    CHECK(empty[0] == Complex(1, 0));
    Circuit c(1);
    c.add(Gate::h(0));
    const auto plus = run_circuit(c);
    CHECK(plus[0].real() == doctest::Approx(0.70710678).epsilon(1e-8));
    CHECK(plus[1].real() == doctest::Approx(0.70710678).epsilon(1e-8));
}

TEST_CASE("invalid gates are rejected") {
    Circuit c(2);
    CHECK_THROWS_AS(c.add(Gate::h(2)), qfeo::IndexError);
    CHECK_THROWS_AS(c.add(Gate::cx(1, 1)), qfeo::IndexError);
    CHECK_THROWS_AS(c.add(Gate::rx(-1, 0.1)), qfeo::IndexError);
    Statevector s(2);
    CHECK_THROWS_AS(s.apply(Gate::rzz(0, 3, 0.1)), qfeo::IndexError);
    CHECK_THROWS_AS(pauli_expectation(s, 2, Pauli::Z), qfeo::IndexError);
}

TEST_CASE("matches the dense Kronecker oracle on 3-qubit circuits") {
    qfeo::Rng rng(2024);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(3));
        const auto c = oracle::random_circuit(rng, n, 10);
        const auto s = run_circuit(c);
        const auto ref = oracle::dense_run(c);
        REQUIRE(max_diff(s, ref) < 1e-10);
        for (int q = 0; q < n; ++q) {
            const auto b = bloch_vector(s, q);
            CHECK(std::abs(b[0] - oracle::dense_expectation(ref, n, q, Pauli::X)) < 1e-10);
            CHECK(std::abs(b[1] - oracle::dense_expectation(ref, n, q, Pauli::Y)) < 1e-10);
            CHECK(std::abs(b[2] - oracle::dense_expectation(ref, n, q, Pauli::Z)) < 1e-10);
        }
    }
}

TEST_CASE("gate matrices agree with the oracle") {
    qfeo::Rng rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        const Gate g = oracle::random_gate(rng, 2);
        const auto dense = oracle::dense_gate(g, 2);
        if (qubit_count(g.kind) == 1) {
            const auto m = single_qubit_matrix(g);
            const Gate moved{g.kind, g.angles, {0, 0}};
            const auto d = oracle::dense_gate(moved, 1);
            for (int r = 0; r < 2; ++r) {
                for (int col = 0; col < 2; ++col) {
                    CHECK(std::abs(m[static_cast<std::size_t>(2 * r + col)] - d(r, col)) < 1e-12);
                }
            }
        } else {
            // Local basis b0 + 2 b1 with b0 on qubits[0].
            const auto m = two_qubit_matrix(g);
            const Gate local{g.kind, g.angles, {0, 1}};
            const auto d = oracle::dense_gate(local, 2);
            for (int r = 0; r < 4; ++r) {
                for (int col = 0; col < 4; ++col) {
                    CHECK(std::abs(m[static_cast<std::size_t>(4 * r + col)] - d(r, col)) < 1e-12);
                }
            }
        }
        (void)dense;
    }
}

TEST_CASE("expectations") {
    Statevector s(1);
    s.apply(Gate::ry(0, 0.7));
    const auto b = bloch_vector(s, 0);
    CHECK(b[0] == doctest::Approx(0.64421769).epsilon(1e-8));
    CHECK(std::abs(b[1]) < 1e-15);
    CHECK(b[2] == doctest::Approx(0.76484219).epsilon(1e-8));
    CHECK(pauli_expectation(s, 0, Pauli::X) == doctest::Approx(std::sin(0.7)));

    const auto z = zero_state(3);
    for (int q = 0; q < 3; ++q) {
        CHECK(pauli_expectation(z, q, Pauli::Z) == 1.0);
        CHECK(pauli_expectation(z, q, Pauli::X) == 0.0);
        CHECK(pauli_expectation(z, q, Pauli::Y) == 0.0);
    }

    Circuit bell(2);
    bell.add(Gate::h(0));
    bell.add(Gate::cx(0, 1));
    const auto bs = run_circuit(bell);
    for (int q = 0; q < 2; ++q) {
        for (double v : bloch_vector(bs, q)) {
            CHECK(std::abs(v) < 1e-15);
        }
    }
}

TEST_CASE("property: norm preservation and bounded expectations") {
    qfeo::Rng rng(99);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(6));
        const auto s = run_circuit(oracle::random_circuit(rng, n, 50));
        REQUIRE(std::abs(s.norm() - 1.0) < 1e-9);
        for (int q = 0; q < n; ++q) {
            for (double v : bloch_vector(s, q)) {
                CHECK(v >= -1.0 - 1e-12);
                CHECK(v <= 1.0 + 1e-12);
            }
        }
    }
}

TEST_CASE("property: zero-angle rotations are the identity") {
    qfeo::Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const auto base = run_circuit(oracle::random_circuit(rng, 3, 12));
        for (const Gate &g : {Gate::rx(1, 0.0), Gate::ry(2, 0.0), Gate::rz(0, 0.0)}) {
            const auto out = apply_gate(base, g);
            for (std::size_t i = 0; i < out.size(); ++i) {
                CHECK(std::abs(out[i] - base[i]) < 1e-14);
            }
        }
    }
}

TEST_CASE("run_circuit equals sequential apply_gate") {
    qfeo::Rng rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        const auto c = oracle::random_circuit(rng, 4, 20);
        Statevector s = zero_state(4);
        for (const auto &g : c.gates) {
            s = apply_gate(s, g);
        }
        const auto r = run_circuit(c);
        for (std::size_t i = 0; i < s.size(); ++i) {
            CHECK(s[i] == r[i]);
        }
    }
}
