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

#include "qfeo/learn/gbt.hpp"
#include "qfeo/learn/svm.hpp"
#include "qfeo/matrix.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace qfeo::learn {

enum class ModelKind { Svc, Gbt };

std::string to_string(ModelKind kind);
ModelKind parse_model_kind(const std::string &name);

using GridPoint = std::vector<std::pair<std::string, double>>;

std::string describe(const GridPoint &point);

/// Cartesian product of named axes, enumerated with the last axis fastest.
struct HyperparamGrid {
    struct Axis {
        std::string name;
        std::vector<double> values;
    };
    std::vector<Axis> axes;

    std::size_t size() const;
    GridPoint point(std::size_t index) const;
    std::vector<GridPoint> points() const;
};

/// svc-reference (195 points), xgb-reference (144 points) and the small desk grids
/// svc-desk and xgb-desk.
HyperparamGrid grid_preset(const std::string &name);
std::vector<std::string> grid_preset_names();
/// Model family a preset belongs to.
ModelKind grid_preset_kind(const std::string &name);

/// Validates parameter names for the model family; throws ParameterError.
void check_point(ModelKind kind, const GridPoint &point);

GbtParams gbt_params(const GridPoint &point, std::uint64_t seed);

class Model {
  public:
    explicit Model(SvmModel m) : impl_(std::move(m)) {}
    explicit Model(GbtModel m) : impl_(std::move(m)) {}

    std::vector<double> decision(const RowMatrix &x) const;

  private:
    std::variant<SvmModel, GbtModel> impl_;
};

Model fit_model(ModelKind kind, const GridPoint &point, const RowMatrix &x, const Labels &y,
                std::uint64_t seed);

} // namespace qfeo::learn
