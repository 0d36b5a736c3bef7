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
#include "qfeo/featuremaps.hpp"
#include "qfeo/rng.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace qfeo::fmap;
using qfeo::sim::Gate;
using qfeo::sim::GateKind;

namespace {

using Pairs = std::vector<std::pair<int, int>>;

std::vector<double> iota_features(int count, double start = 0.5, double step = 0.1) {
    std::vector<double> x;
    for (int i = 0; i < count; ++i) {
        x.push_back(start + step * i);
    }
    return x;
}

int count_kind(const qfeo::sim::Circuit &c, GateKind kind) {
    return static_cast<int>(std::count_if(c.gates.begin(), c.gates.end(),
                                          [kind](const Gate &g) { return g.kind == kind; }));
}

double fidelity(const qfeo::sim::Statevector &a, const qfeo::sim::Statevector &b) {
    std::complex<double> ip = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ip += std::conj(a[i]) * b[i];
    }
    return std::norm(ip);
}

} // namespace

TEST_CASE("entanglement patterns") {
    CHECK(entanglement_pairs(Entanglement::Pairwise, 4, LayerParity::Even) == Pairs{{0, 1}, {2, 3}});
    CHECK(entanglement_pairs(Entanglement::Pairwise, 4, LayerParity::Odd) == Pairs{{1, 2}});
    CHECK(entanglement_pairs(Entanglement::Full, 3) == Pairs{{0, 1}, {0, 2}, {1, 2}});
    CHECK(entanglement_pairs(Entanglement::Circular, 2) == Pairs{{0, 1}});
    CHECK(entanglement_pairs(Entanglement::Linear, 4) == Pairs{{0, 1}, {1, 2}, {2, 3}});
    const auto ring = entanglement_pairs(Entanglement::Circular, 4);
    CHECK(ring.size() == 4);
    CHECK(std::find(ring.begin(), ring.end(), std::pair{3, 0}) != ring.end());
}

TEST_CASE("separate entangled gate layout") {
    FeatureMapConfig cfg;
    cfg.family = Family::SeparateEntangled;
    cfg.n_qubits = 2;
    cfg.blocks = 2; // two density-groups hold the 12 features
    cfg.density = 3;
    cfg.paulis = {"Y", "X", "Z"};
    cfg.alpha = 0.1;
    cfg.entanglement = Entanglement::Pairwise;
    const auto x = iota_features(12);
    const auto c = build_separate_entangled(cfg, x);
    const std::vector<Gate> expected_head{
        Gate::ry(0, 0.1 * x[0]), Gate::ry(1, 0.1 * x[1]), Gate::rx(0, 0.1 * x[2]),
        Gate::rx(1, 0.1 * x[3]), Gate::rz(0, 0.1 * x[4]), Gate::rz(1, 0.1 * x[5]),
        Gate::cx(0, 1),          Gate::ry(0, 0.1 * x[6])};
    REQUIRE(c.gates.size() == 13);
    for (std::size_t i = 0; i < expected_head.size(); ++i) {
        CHECK(c.gates[i] == expected_head[i]);
    }
    CHECK(c.gates.back() == Gate::rz(1, 0.1 * x[11]));
    CHECK(cfg.capacity() == 12);
    const auto too_many = iota_features(13);
    CHECK_THROWS_AS(build_separate_entangled(cfg, too_many), qfeo::EncodingError);
}

TEST_CASE("separate entangled zero features give the zero state") {
    auto cfg = preset("se-0", 3);
    const std::vector<double> x(20, 0.0);
    const auto s = FeatureMap(cfg).encode(x);
    for (int q = 0; q < 3; ++q) {
        CHECK(qfeo::sim::pauli_expectation(s, q, qfeo::sim::Pauli::Z) == doctest::Approx(1.0));
    }
}

TEST_CASE("heisenberg brickwork assignment") {
    auto cfg = preset("hh-0", 4);
    const auto bank = U3AngleBank::make(3, 4);
    const std::vector<double> x{0.4, 0.9, 1.3, 2.2};
    const auto c = build_heisenberg(cfg, x, bank);
    REQUIRE(c.gates.size() == 4 + 12);
    for (int q = 0; q < 4; ++q) {
        CHECK(c.gates[static_cast<std::size_t>(q)].kind == GateKind::U3);
    }
    const Pairs expected{{0, 1}, {2, 3}, {1, 2}, {0, 1}};
    for (std::size_t f = 0; f < 4; ++f) {
        const double theta = cfg.alpha * x[f];
        const auto &a = expected[f];
        CHECK(c.gates[4 + 3 * f] == Gate::rzz(a.first, a.second, theta));
        CHECK(c.gates[5 + 3 * f] == Gate::ryy(a.first, a.second, theta));
        CHECK(c.gates[6 + 3 * f] == Gate::rxx(a.first, a.second, theta));
    }
    const auto empty = build_heisenberg(cfg, {}, bank);
    CHECK(empty.gates.size() == 4);
    CHECK(build_heisenberg(cfg, x, U3AngleBank::make(3, 4)).gates == c.gates);
}

TEST_CASE("U3 bank is a deterministic function of the seed") {
    const auto a = U3AngleBank::make(42, 5);
    const auto b = U3AngleBank::make(42, 5);
    const auto c = U3AngleBank::make(43, 5);
    CHECK(a.angles == b.angles);
    CHECK(a.angles != c.angles);
    for (const auto &row : a.angles) {
        for (double v : row) {
            CHECK(v >= 0.0);
            CHECK(v < 2 * std::numbers::pi);
        }
    }
}

TEST_CASE("repeated pauli blocks") {
    FeatureMapConfig cfg;
    cfg.family = Family::RepeatedPauli;
    cfg.n_qubits = 2;
    cfg.alpha = 0.1;
    cfg.paulis = {"Y", "XZ"};
    cfg.entanglement = Entanglement::Pairwise;
    const std::vector<double> x{0.5, 1.0, 1.5, 2.0};
    const auto c = build_repeated_pauli(cfg, x);
    // Per block: H H | RX P RX on each qubit | H(q1) CX P CX H(q1).
    REQUIRE(c.gates.size() == 2 * 13);
    CHECK(c.gates[0] == Gate::h(0));
    CHECK(c.gates[2] == Gate::rx(0, std::numbers::pi / 2));
    CHECK(c.gates[3] == Gate::p(0, 0.1 * 0.5));
    CHECK(c.gates[6] == Gate::p(1, 0.1 * 1.0));
    CHECK(c.gates[8] == Gate::h(1));
    CHECK(c.gates[9] == Gate::cx(0, 1));
    CHECK(c.gates[10] == Gate::p(1, 0.1 * 0.5 * 1.0));
    CHECK(c.gates[11] == Gate::cx(0, 1));
    // Second block repeats with x2, x3.
    CHECK(c.gates[13] == Gate::h(0));
    CHECK(c.gates[13 + 10] == Gate::p(1, 0.1 * 1.5 * 2.0));

    // Largest rescaled product stays inside [0, 2*pi).
    const std::vector<double> hi{2.8, 2.8};
    CHECK_NOTHROW(build_repeated_pauli(cfg, hi));
    cfg.alpha = 1.0;
    CHECK_THROWS_AS(build_repeated_pauli(cfg, hi), qfeo::RangeError);
}

TEST_CASE("data reloading") {
    const auto r = apply_data_reloading(iota_features(67), 2.0);
    CHECK(r.values.size() == 134);
    CHECK(std::count(r.multipliers.begin(), r.multipliers.end(), 1.0) == 67);
    CHECK(std::count(r.multipliers.begin(), r.multipliers.end(), 2.0) == 67);
    const std::vector<double> one{0.7};
    const auto s = apply_data_reloading(one, 2.0);
    CHECK(s.values == std::vector<double>{0.7, 0.7});
    CHECK(s.multipliers == std::vector<double>{1.0, 2.0});

    // Factor 1 equals plain tiling.
    auto cfg = preset("hh-0", 4);
    cfg.reload = true;
    cfg.reload_alpha_factor = 1.0;
    const auto x = iota_features(5);
    auto tiled = x;
    tiled.insert(tiled.end(), x.begin(), x.end());
    auto plain = cfg;
    plain.reload = false;
    CHECK(FeatureMap(cfg).build(x).gates == FeatureMap(plain).build(tiled).gates);
}

TEST_CASE("property: feature-carrying gates equal the feature count") {
    qfeo::Rng rng(8);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 2 + static_cast<int>(rng.below(4));
        const int count = static_cast<int>(rng.below(20));
        std::vector<double> x;
        for (int i = 0; i < count; ++i) {
            x.push_back(rng.uniform(0.3, 2.8));
        }
        auto se = preset("se-1", n);
        const auto c_se = build_separate_entangled(se, x);
        CHECK(count_kind(c_se, GateKind::RX) + count_kind(c_se, GateKind::RY) +
                  count_kind(c_se, GateKind::RZ) ==
              count);
        auto hh = preset("hh-1", n);
        const auto c_hh = build_heisenberg(hh, x, U3AngleBank::make(1, n));
        CHECK(count_kind(c_hh, GateKind::RZZ) == count);
        CHECK(count_kind(c_hh, GateKind::RYY) == count);
        CHECK(count_kind(c_hh, GateKind::RXX) == count);
        auto rp = preset("rp-0", n);
        rp.paulis = {"Z"};
        const auto c_rp = build_repeated_pauli(rp, x);
        CHECK(count_kind(c_rp, GateKind::P) == count);
    }
}

TEST_CASE("property: ordering changes the Heisenberg state") {
    qfeo::Rng rng(123);
    const FeatureMap map(preset("hh-1", 4));
    int distinct = 0;
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> x;
        for (int i = 0; i < 8; ++i) {
            x.push_back(rng.uniform(0.3, 2.8));
        }
        auto y = x;
        rng.shuffle(std::span<double>(y));
        if (fidelity(map.encode(x), map.encode(y)) < 1.0 - 1e-6) {
            ++distinct;
        }
    }
    CHECK(distinct >= 95);
}

TEST_CASE("property: builders are deterministic") {
    qfeo::Rng rng(31);
    for (const auto &name : preset_names()) {
        const auto cfg = preset(name, 5);
        std::vector<double> x;
        for (int i = 0; i < 15; ++i) {
            x.push_back(rng.uniform(0.3, 2.8));
        }
        CHECK(FeatureMap(cfg).build(x).gates == FeatureMap(cfg).build(x).gates);
    }
}

TEST_CASE("config validation") {
    auto cfg = preset("se-0", 4);
    cfg.alpha = 0.0;
    CHECK_THROWS_AS(cfg.validate(), qfeo::ParameterError);
    cfg = preset("hh-0", 1);
    CHECK_THROWS_AS(cfg.validate(), qfeo::ParameterError);
    cfg = preset("rp-0", 3);
    cfg.paulis = {"XQ"};
    CHECK_THROWS_AS(cfg.validate(), qfeo::ParameterError);
    CHECK_THROWS_AS(preset("nope", 3), qfeo::ConfigError);
    CHECK(preset("se-0", 9).capacity() == 9 * 3 * 9);
    CHECK(preset("hh-0", 9).capacity() == kUnbounded);
}
