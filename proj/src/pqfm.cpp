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
#include "qfeo/pqfm.hpp"

#include "qfeo/errors.hpp"
#include "qfeo/format.hpp"
#include "qfeo/parallel.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>

namespace qfeo::pqfm {

std::vector<double> project_row(const fmap::FeatureMap &map, std::span<const double> encoded) {
    const sim::Statevector state = map.encode(encoded);
    const int n = map.n_qubits();
    std::vector<double> row;
    row.reserve(static_cast<std::size_t>(3 * n));
    for (int q = 0; q < n; ++q) {
        for (double v : sim::bloch_vector(state, q)) {
            row.push_back(std::clamp(v, -1.0, 1.0));
        }
    }
    return row;
}

ProjectedDataset project(const RowMatrix &samples, const Labels &labels,
                         const fmap::FeatureMap &map, const manip::ManipulationPlan &plan) {
    if (static_cast<std::size_t>(samples.rows()) != labels.size()) {
        throw ShapeError("project: " + std::to_string(samples.rows()) + " rows but " +
                         std::to_string(labels.size()) + " labels");
    }
    const int n = map.n_qubits();
    ProjectedDataset out;
    out.labels = labels;
    out.features.resize(samples.rows(), 3 * n);
    parallel_for(static_cast<std::size_t>(samples.rows()), [&](std::size_t i) {
        const auto r = static_cast<Eigen::Index>(i);
        std::vector<double> x(samples.row(r).begin(), samples.row(r).end());
        const auto manipulated = plan.apply(x);
        const auto row = project_row(map, manipulated.values);
        for (int c = 0; c < 3 * n; ++c) {
            out.features(r, c) = row[static_cast<std::size_t>(c)];
        }
    });
    return out;
}

ProjectedDataset project(const RowMatrix &samples, const Labels &labels,
                         const fmap::FeatureMapConfig &cfg, const manip::ManipulationSpec &spec,
                         std::span<const double> w) {
    const fmap::FeatureMap map(cfg);
    const auto plan = manip::make_plan(spec, w, static_cast<std::size_t>(samples.cols()));
    return project(samples, labels, map, plan);
}

std::vector<std::string> column_names(int n_qubits) {
    std::vector<std::string> names;
    for (int q = 0; q < n_qubits; ++q) {
        for (const char *axis : {"x", "y", "z"}) {
            names.push_back(std::string(axis) + "_q" + std::to_string(q));
        }
    }
    names.emplace_back("label");
    return names;
}

void write_csv(const ProjectedDataset &data, std::ostream &out) {
    const auto names = column_names(data.n_qubits());
    for (std::size_t i = 0; i < names.size(); ++i) {
        out << (i ? "," : "") << names[i];
    }
    out << '\n';
    for (Eigen::Index r = 0; r < data.features.rows(); ++r) {
        for (Eigen::Index c = 0; c < data.features.cols(); ++c) {
            out << format_double(data.features(r, c)) << ',';
        }
        out << data.labels[static_cast<std::size_t>(r)] << '\n';
    }
}

void write_csv(const ProjectedDataset &data, const std::string &path) {
    std::ofstream out(path);
    if (!out) {
        throw DataError("cannot open " + path + " for writing");
    }
    write_csv(data, out);
}

} // namespace qfeo::pqfm
