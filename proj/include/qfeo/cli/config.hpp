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

#include "qfeo/expressibility.hpp"
#include "qfeo/featuremaps.hpp"
#include "qfeo/learn/grid.hpp"
#include "qfeo/manipulate.hpp"
#include "qfeo/pipeline.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qfeo::cli {

using json = nlohmann::json;

struct SyntheticSpec {
    int d{400};
    int p{12};
    int k{4};
    double noise_sd{0.5};
    std::uint64_t seed{0};
};

struct DatasetEntry {
    std::string name;
    std::string csv; ///< resolved path; empty for synthetic data
    std::optional<SyntheticSpec> synthetic;
    /// Optional dataset family (churn, virtual_screening, german, plasticc)
    /// used for the default FS/FSO selection count.
    std::string family;
    /// Overrides data.balance for this dataset.
    std::optional<bool> balance;
};

struct FeatureMapEntry {
    std::string preset;
    json overrides = json::object();

    fmap::FeatureMapConfig make(int n_qubits, std::uint64_t default_u3_seed) const;
    std::string label() const;
};

struct ManipulationEntry {
    manip::Kind kind{manip::Kind::NFO};
    int r{0}; ///< 0: dataset-family default
};

struct RunConfig {
    std::string name{"qfeo"};
    std::uint64_t seed{0};
    std::vector<DatasetEntry> datasets;
    std::vector<FeatureMapEntry> feature_maps;
    std::vector<int> qubits;
    std::vector<ManipulationEntry> manipulations;

    learn::ModelKind classifier{learn::ModelKind::Svc};
    std::string grid_name{"svc-reference"}; ///< "custom" for inline grids
    learn::HyperparamGrid grid;

    int bo_iterations{100};
    int bo_init{10};
    int n_candidates{1000};
    int grid_folds{5};
    int score_folds{10};
    int batches{10};
    double test_fraction{0.33};
    bool balance{false};
    double rescale_lo{0.3};
    double rescale_hi{2.8};
    /// Random-weight draws per batch for the baseline table; 0 disables it.
    int baseline_draws{0};
};

/// Default FS/FSO selection count for a dataset family, capped at p - 1.
int default_selection(const std::string &family, std::size_t p);

/// Field-path errors are reported as ConfigError("$.bo.iterations: ...").
/// Relative CSV paths resolve against `base_dir`. A run manifest is also
/// accepted; its embedded resolved config is used.
RunConfig parse_run_config(const json &doc, const std::string &base_dir);
RunConfig load_run_config(const std::string &path);

/// All defaults materialized.
json to_json(const RunConfig &cfg);

/// Builds the experiment for one (dataset, feature map, qubits, manipulation)
/// combination; throws ConfigError when FS/FSO needs an explicit r.
pipeline::ExperimentConfig make_experiment(const RunConfig &cfg, const FeatureMapEntry &fm,
                                           int n_qubits, const ManipulationEntry &m,
                                           const DatasetEntry &ds, std::size_t n_features);

/// Replaces the feature-map list (feature-map preset name) or the classifier
/// grid (grid preset name).
void apply_preset_override(RunConfig &cfg, const std::string &preset);

struct ExpressibilityConfig {
    FeatureMapEntry feature_map;
    int n_qubits{4};
    expr::StudyConfig study;

    expr::StudyConfig resolved() const;
};

ExpressibilityConfig parse_expressibility_config(const json &doc);
ExpressibilityConfig load_expressibility_config(const std::string &path);
json to_json(const ExpressibilityConfig &cfg);

json read_json_file(const std::string &path);

} // namespace qfeo::cli
