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

#include "qfeo/statevec.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace qfeo::fmap {

enum class Family { SeparateEntangled, HeisenbergHamiltonian, RepeatedPauli };

enum class Entanglement { Linear, Pairwise, Circular, Full };

enum class LayerParity { Even, Odd };

std::string to_string(Family family);
std::string to_string(Entanglement pattern);
Family parse_family(const std::string &name);
Entanglement parse_entanglement(const std::string &name);

inline constexpr std::size_t kUnbounded = std::numeric_limits<std::size_t>::max();

struct FeatureMapConfig {
    Family family{Family::SeparateEntangled};
    int n_qubits{4};
    int blocks{1};
    int density{1};
    Entanglement entanglement{Entanglement::Pairwise};
    double alpha{0.1};
    /// SE: single-axis rotation cycle, e.g. {"Y","X","Z"}.
    /// RP: one- and two-letter Pauli terms, e.g. {"Y","XZ"}.
    std::vector<std::string> paulis{"Y", "X", "Z"};
    std::uint64_t u3_seed{0};
    bool reload{false};
    double reload_alpha_factor{2.0};

    /// Throws ParameterError on an inconsistent configuration.
    void validate() const;

    /// Maximum number of encodable features (after reloading is applied).
    /// Separate Entangled: blocks * density * n_qubits. The brickwork and
    /// repeated-block families grow until the features are exhausted.
    std::size_t capacity() const;
};

/// Named presets: se-0, se-1, se-2, hh-0, hh-1, rp-0.
FeatureMapConfig preset(const std::string &name, int n_qubits);
std::vector<std::string> preset_names();

/// Fixed per-experiment U3 angles, uniform in [0, 2*pi).
struct U3AngleBank {
    std::vector<std::array<double, 3>> angles;

    static U3AngleBank make(std::uint64_t seed, int n_qubits);
};

std::vector<std::pair<int, int>> entanglement_pairs(Entanglement pattern, int n_qubits,
                                                    LayerParity parity = LayerParity::Even);

/// Reloading: x tiled twice; the second copy gets the alpha multiplier.
struct ReloadedFeatures {
    std::vector<double> values;
    std::vector<double> multipliers;
};
ReloadedFeatures apply_data_reloading(std::span<const double> x, double factor);

/// Builders. `multipliers` scales each feature's angle; empty means all 1.
sim::Circuit build_separate_entangled(const FeatureMapConfig &cfg, std::span<const double> x,
                                      std::span<const double> multipliers = {});
sim::Circuit build_heisenberg(const FeatureMapConfig &cfg, std::span<const double> x,
                              const U3AngleBank &bank,
                              std::span<const double> multipliers = {});
sim::Circuit build_repeated_pauli(const FeatureMapConfig &cfg, std::span<const double> x,
                                  std::span<const double> multipliers = {});

/// A configured feature map with its frozen U3 bank; applies reloading
/// when enabled and dispatches to the family builder.
class FeatureMap {
  public:
    explicit FeatureMap(FeatureMapConfig cfg);

    const FeatureMapConfig &config() const { return cfg_; }
    const U3AngleBank &bank() const { return bank_; }
    int n_qubits() const { return cfg_.n_qubits; }

    sim::Circuit build(std::span<const double> x) const;
    sim::Statevector encode(std::span<const double> x) const;

  private:
    FeatureMapConfig cfg_;
    U3AngleBank bank_;
};

} // namespace qfeo::fmap
