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

#include "qfeo/featuremaps.hpp"
#include "qfeo/manipulate.hpp"
#include "qfeo/matrix.hpp"

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace qfeo::pqfm {

/// d x 3n matrix of per-qubit expectations ordered X, Y, Z per qubit.
struct ProjectedDataset {
    RowMatrix features;
    Labels labels;

    int n_qubits() const { return static_cast<int>(features.cols() / 3); }
};

/// Projects one encoded sample (already manipulated) to its 3n expectations.
std::vector<double> project_row(const fmap::FeatureMap &map, std::span<const double> encoded);

/// Applies a fixed manipulation plan row by row and projects the result.
ProjectedDataset project(const RowMatrix &samples, const Labels &labels,
                         const fmap::FeatureMap &map, const manip::ManipulationPlan &plan);

ProjectedDataset project(const RowMatrix &samples, const Labels &labels,
                         const fmap::FeatureMapConfig &cfg, const manip::ManipulationSpec &spec,
                         std::span<const double> w);

/// Column header: x_q0, y_q0, z_q0, ..., label.
std::vector<std::string> column_names(int n_qubits);

void write_csv(const ProjectedDataset &data, std::ostream &out);
void write_csv(const ProjectedDataset &data, const std::string &path);

} // namespace qfeo::pqfm
