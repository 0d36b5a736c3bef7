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
#include "qfeo/featuremaps.hpp"

#include "qfeo/errors.hpp"
#include "qfeo/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qfeo::fmap {

using sim::Circuit;
using sim::Gate;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double multiplier_at(std::span<const double> multipliers, std::size_t i) {
    return multipliers.empty() ? 1.0 : multipliers[i];
}

void check_inputs(const FeatureMapConfig &cfg, std::span<const double> x,
                  std::span<const double> multipliers, Family expected) {
    if (cfg.family != expected) {
        throw ParameterError("feature map family mismatch: config is " + to_string(cfg.family) +
                             ", builder is " + to_string(expected));
    }
    cfg.validate();
    if (!multipliers.empty() && multipliers.size() != x.size()) {
        throw ShapeError("multiplier count " + std::to_string(multipliers.size()) +
                         " does not match feature count " + std::to_string(x.size()));
    }
    const std::size_t cap = cfg.capacity();
    if (cap != kUnbounded && x.size() > cap) {
        throw EncodingError(to_string(cfg.family) + ": " + std::to_string(x.size()) +
                            " features exceed capacity " + std::to_string(cap));
    }
}

/// Entangling layer used between rotation groups: pairwise emits the even
/// pairs followed by the odd pairs (brickwork in one layer).
std::vector<std::pair<int, int>> layer_pairs(Entanglement pattern, int n) {
    auto pairs = entanglement_pairs(pattern, n, LayerParity::Even);
    if (pattern == Entanglement::Pairwise) {
        const auto odd = entanglement_pairs(pattern, n, LayerParity::Odd);
        pairs.insert(pairs.end(), odd.begin(), odd.end());
    }
    return pairs;
}

sim::Pauli parse_axis(const std::string &s) {
    if (s == "X") {
        return sim::Pauli::X;
    }
    if (s == "Y") {
        return sim::Pauli::Y;
    }
    if (s == "Z") {
        return sim::Pauli::Z;
    }
    throw ParameterError("unknown Pauli axis '" + s + "'");
}

Gate rotation(sim::Pauli axis, int q, double angle) {
    switch (axis) {
    case sim::Pauli::X:
        return Gate::rx(q, angle);
    case sim::Pauli::Y:
        return Gate::ry(q, angle);
    case sim::Pauli::Z:
        return Gate::rz(q, angle);
    }
    return Gate::rz(q, angle);
}

// Basis change into the eigenbasis of `axis` so that a Z-type phase acts as
// the corresponding Pauli rotation.
void rotate_in(Circuit &c, char axis, int q) {
    if (axis == 'X') {
        c.add(Gate::h(q));
    } else if (axis == 'Y') {
        c.add(Gate::rx(q, std::numbers::pi / 2.0));
    }
}

void rotate_out(Circuit &c, char axis, int q) {
    if (axis == 'X') {
        c.add(Gate::h(q));
    } else if (axis == 'Y') {
        c.add(Gate::rx(q, -std::numbers::pi / 2.0));
    }
}

} // namespace

std::string to_string(Family family) {
    switch (family) {
    case Family::SeparateEntangled:
        return "SeparateEntangled";
    case Family::HeisenbergHamiltonian:
        return "HeisenbergHamiltonian";
    case Family::RepeatedPauli:
        return "RepeatedPauli";
    }
    return "?";
}

std::string to_string(Entanglement pattern) {
    switch (pattern) {
    case Entanglement::Linear:
        return "linear";
    case Entanglement::Pairwise:
        return "pairwise";
    case Entanglement::Circular:
        return "circular";
    case Entanglement::Full:
        return "full";
    }
    return "?";
}

Family parse_family(const std::string &name) {
    if (name == "SeparateEntangled" || name == "se") {
        return Family::SeparateEntangled;
    }
    if (name == "HeisenbergHamiltonian" || name == "hh") {
        return Family::HeisenbergHamiltonian;
    }
    if (name == "RepeatedPauli" || name == "rp") {
        return Family::RepeatedPauli;
    }
    throw ParameterError("unknown feature map family '" + name + "'");
}

Entanglement parse_entanglement(const std::string &name) {
    if (name == "linear") {
        return Entanglement::Linear;
    }
    if (name == "pairwise") {
        return Entanglement::Pairwise;
    }
    if (name == "circular") {
        return Entanglement::Circular;
    }
    if (name == "full") {
        return Entanglement::Full;
    }
    throw ParameterError("unknown entanglement pattern '" + name + "'");
}

void FeatureMapConfig::validate() const {
    if (n_qubits < 1 || n_qubits > sim::kMaxQubits) {
        throw ParameterError("n_qubits must be in [1, " + std::to_string(sim::kMaxQubits) + "]");
    }
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw ParameterError("alpha must be a positive finite number");
    }
    if (blocks < 1) {
        throw ParameterError("blocks must be >= 1");
    }
    if (density < 1) {
        throw ParameterError("density must be >= 1");
    }
    if (reload && !(reload_alpha_factor > 0.0)) {
        throw ParameterError("reload_alpha_factor must be positive");
    }
    switch (family) {
    case Family::SeparateEntangled:
        if (paulis.empty()) {
            throw ParameterError("Separate Entangled needs at least one Pauli axis");
        }
        for (const auto &p : paulis) {
            parse_axis(p);
        }
        break;
    case Family::HeisenbergHamiltonian:
        if (n_qubits < 2) {
            throw ParameterError("Heisenberg Hamiltonian needs at least 2 qubits");
        }
        break;
    case Family::RepeatedPauli:
        if (n_qubits < 2) {
            throw ParameterError("Repeated Pauli needs at least 2 qubits");
        }
        if (paulis.empty()) {
            throw ParameterError("Repeated Pauli needs at least one Pauli term");
        }
        for (const auto &p : paulis) {
            if (p.empty() || p.size() > 2 ||
                p.find_first_not_of("XYZ") != std::string::npos) {
                throw ParameterError("Repeated Pauli term '" + p +
                                     "' must be one or two letters from X, Y, Z");
            }
        }
        break;
    }
}

std::size_t FeatureMapConfig::capacity() const {
    if (family == Family::SeparateEntangled) {
        return static_cast<std::size_t>(blocks) * static_cast<std::size_t>(density) *
               static_cast<std::size_t>(n_qubits);
    }
    return kUnbounded;
}

FeatureMapConfig preset(const std::string &name, int n_qubits) {
    FeatureMapConfig cfg;
    cfg.n_qubits = n_qubits;
    if (name == "se-0" || name == "se-1" || name == "se-2") {
        cfg.family = Family::SeparateEntangled;
        cfg.blocks = 9;
        cfg.density = name == "se-2" ? 2 : 3;
        cfg.entanglement = name == "se-0" ? Entanglement::Full : Entanglement::Pairwise;
        cfg.alpha = name == "se-2" ? 0.3 : 0.1;
        cfg.paulis = {"Y", "X", "Z"};
    } else if (name == "hh-0" || name == "hh-1") {
        cfg.family = Family::HeisenbergHamiltonian;
        cfg.blocks = 1;
        cfg.entanglement = Entanglement::Pairwise;
        cfg.alpha = name == "hh-0" ? 0.1 : 0.3;
        cfg.paulis = {};
    } else if (name == "rp-0") {
        cfg.family = Family::RepeatedPauli;
        cfg.entanglement = Entanglement::Pairwise;
        cfg.alpha = 0.1;
        cfg.paulis = {"Y", "XZ"};
    } else {
        throw ConfigError("unknown feature map preset '" + name + "'");
    }
    return cfg;
}

std::vector<std::string> preset_names() { return {"se-0", "se-1", "se-2", "hh-0", "hh-1", "rp-0"}; }

U3AngleBank U3AngleBank::make(std::uint64_t seed, int n_qubits) {
    Rng rng(derive_seed(seed, 0x55334133ULL));
    U3AngleBank bank;
    bank.angles.resize(static_cast<std::size_t>(std::max(n_qubits, 0)));
    for (auto &a : bank.angles) {
        for (auto &v : a) {
            v = rng.uniform(0.0, kTwoPi);
        }
    }
    return bank;
}

std::vector<std::pair<int, int>> entanglement_pairs(Entanglement pattern, int n_qubits,
                                                    LayerParity parity) {
    std::vector<std::pair<int, int>> pairs;
    if (n_qubits < 2) {
        return pairs;
    }
    switch (pattern) {
    case Entanglement::Linear:
        for (int q = 0; q + 1 < n_qubits; ++q) {
            pairs.emplace_back(q, q + 1);
        }
        break;
    case Entanglement::Pairwise:
        for (int q = parity == LayerParity::Even ? 0 : 1; q + 1 < n_qubits; q += 2) {
            pairs.emplace_back(q, q + 1);
        }
        break;
    case Entanglement::Circular:
        // The closing link leads the layer; on two qubits it coincides with (0, 1).
        if (n_qubits > 2) {
            pairs.emplace_back(n_qubits - 1, 0);
        }
        for (int q = 0; q + 1 < n_qubits; ++q) {
            pairs.emplace_back(q, q + 1);
        }
        break;
    case Entanglement::Full:
        for (int i = 0; i < n_qubits; ++i) {
            for (int j = i + 1; j < n_qubits; ++j) {
                pairs.emplace_back(i, j);
            }
        }
        break;
    }
    return pairs;
}

ReloadedFeatures apply_data_reloading(std::span<const double> x, double factor) {
    ReloadedFeatures out;
    out.values.reserve(2 * x.size());
    out.values.insert(out.values.end(), x.begin(), x.end());
    out.values.insert(out.values.end(), x.begin(), x.end());
    out.multipliers.assign(x.size(), 1.0);
    out.multipliers.resize(2 * x.size(), factor);
    return out;
}

Circuit build_separate_entangled(const FeatureMapConfig &cfg, std::span<const double> x,
                                 std::span<const double> multipliers) {
    check_inputs(cfg, x, multipliers, Family::SeparateEntangled);
    const int n = cfg.n_qubits;
    Circuit circuit(n);
    std::vector<sim::Pauli> axes;
    for (const auto &p : cfg.paulis) {
        axes.push_back(parse_axis(p));
    }
    const auto pairs = layer_pairs(cfg.entanglement, n);
    const std::size_t per_group = static_cast<std::size_t>(cfg.density) * static_cast<std::size_t>(n);

    std::size_t layer = 0;
    for (int group = 0; group < cfg.blocks; ++group) {
        const std::size_t first = static_cast<std::size_t>(group) * per_group;
        if (first >= x.size()) {
            break;
        }
        if (group > 0) {
            for (const auto &[a, b] : pairs) {
                circuit.add(Gate::cx(a, b));
            }
        }
        for (int d = 0; d < cfg.density; ++d, ++layer) {
            const sim::Pauli axis = axes[layer % axes.size()];
            for (int q = 0; q < n; ++q) {
                const std::size_t i = layer * static_cast<std::size_t>(n) + static_cast<std::size_t>(q);
                if (i >= x.size()) {
                    break;
                }
                circuit.add(rotation(axis, q, cfg.alpha * multiplier_at(multipliers, i) * x[i]));
            }
        }
    }
    return circuit;
}

Circuit build_heisenberg(const FeatureMapConfig &cfg, std::span<const double> x,
                         const U3AngleBank &bank, std::span<const double> multipliers) {
    check_inputs(cfg, x, multipliers, Family::HeisenbergHamiltonian);
    const int n = cfg.n_qubits;
    if (bank.angles.size() != static_cast<std::size_t>(n)) {
        throw ShapeError("U3 angle bank has " + std::to_string(bank.angles.size()) +
                         " entries for " + std::to_string(n) + " qubits");
    }
    Circuit circuit(n);
    for (int q = 0; q < n; ++q) {
        const auto &a = bank.angles[static_cast<std::size_t>(q)];
        circuit.add(Gate::u3(q, a[0], a[1], a[2]));
    }
    const auto even = entanglement_pairs(Entanglement::Pairwise, n, LayerParity::Even);
    const auto odd = entanglement_pairs(Entanglement::Pairwise, n, LayerParity::Odd);

    for (int rep = 0; rep < cfg.blocks; ++rep) {
        std::size_t i = 0;
        bool use_even = true;
        while (i < x.size()) {
            const auto &sweep = use_even ? even : odd;
            use_even = !use_even;
            for (const auto &[a, b] : sweep) {
                if (i >= x.size()) {
                    break;
                }
                const double theta = cfg.alpha * multiplier_at(multipliers, i) * x[i];
                circuit.add(Gate::rzz(a, b, theta));
                circuit.add(Gate::ryy(a, b, theta));
                circuit.add(Gate::rxx(a, b, theta));
                ++i;
            }
        }
    }
    return circuit;
}

Circuit build_repeated_pauli(const FeatureMapConfig &cfg, std::span<const double> x,
                             std::span<const double> multipliers) {
    check_inputs(cfg, x, multipliers, Family::RepeatedPauli);
    const int n = cfg.n_qubits;
    const auto pairs = layer_pairs(cfg.entanglement, n);

    std::vector<double> scaled(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        scaled[i] = multiplier_at(multipliers, i) * x[i];
    }
    // Pair phases alpha * v_i * v_j must stay inside [0, 2*pi).
    const std::size_t un = static_cast<std::size_t>(n);
    for (std::size_t start = 0; start < scaled.size(); start += un) {
        const std::size_t active = std::min(un, scaled.size() - start);
        for (const auto &[a, b] : pairs) {
            const auto ua = static_cast<std::size_t>(a);
            const auto ub = static_cast<std::size_t>(b);
            if (ua >= active || ub >= active) {
                continue;
            }
            const double phase = cfg.alpha * scaled[start + ua] * scaled[start + ub];
            if (!(phase >= 0.0 && phase < kTwoPi)) {
                throw RangeError("Repeated Pauli: pair phase alpha*x_i*x_j = " +
                                 std::to_string(phase) + " outside [0, 2*pi)");
            }
        }
    }

    Circuit circuit(n);
    for (std::size_t start = 0; start < scaled.size(); start += un) {
        const std::size_t active = std::min(un, scaled.size() - start);
        for (std::size_t q = 0; q < active; ++q) {
            circuit.add(Gate::h(static_cast<int>(q)));
        }
        for (const auto &term : cfg.paulis) {
            if (term.size() == 1) {
                for (std::size_t q = 0; q < active; ++q) {
                    const int qi = static_cast<int>(q);
                    rotate_in(circuit, term[0], qi);
                    circuit.add(Gate::p(qi, cfg.alpha * scaled[start + q]));
                    rotate_out(circuit, term[0], qi);
                }
                continue;
            }
            // Two-letter term: the last letter acts on the first qubit of the pair.
            const char first_axis = term[1];
            const char second_axis = term[0];
            for (const auto &[a, b] : pairs) {
                const auto ua = static_cast<std::size_t>(a);
                const auto ub = static_cast<std::size_t>(b);
                if (ua >= active || ub >= active) {
                    continue;
                }
                rotate_in(circuit, first_axis, a);
                rotate_in(circuit, second_axis, b);
                circuit.add(Gate::cx(a, b));
                circuit.add(Gate::p(b, cfg.alpha * scaled[start + ua] * scaled[start + ub]));
                circuit.add(Gate::cx(a, b));
                rotate_out(circuit, first_axis, a);
                rotate_out(circuit, second_axis, b);
            }
        }
    }
    return circuit;
}

FeatureMap::FeatureMap(FeatureMapConfig cfg)
    : cfg_(std::move(cfg)), bank_(U3AngleBank::make(cfg_.u3_seed, cfg_.n_qubits)) {
    cfg_.validate();
}

Circuit FeatureMap::build(std::span<const double> x) const {
    std::span<const double> values = x;
    std::span<const double> multipliers;
    ReloadedFeatures reloaded;
    if (cfg_.reload) {
        reloaded = apply_data_reloading(x, cfg_.reload_alpha_factor);
        values = reloaded.values;
        multipliers = reloaded.multipliers;
    }
    switch (cfg_.family) {
    case Family::SeparateEntangled:
        return build_separate_entangled(cfg_, values, multipliers);
    case Family::HeisenbergHamiltonian:
        return build_heisenberg(cfg_, values, bank_, multipliers);
    case Family::RepeatedPauli:
        return build_repeated_pauli(cfg_, values, multipliers);
    }
    throw ParameterError("unknown feature map family");
}

sim::Statevector FeatureMap::encode(std::span<const double> x) const {
    return sim::run_circuit(build(x));
}

} // namespace qfeo::fmap
