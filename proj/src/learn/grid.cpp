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
#include "qfeo/learn/grid.hpp"

#include "qfeo/errors.hpp"

#include <cmath>
#include <sstream>

namespace qfeo::learn {

std::string to_string(ModelKind kind) { return kind == ModelKind::Svc ? "svc" : "xgb"; }

ModelKind parse_model_kind(const std::string &name) {
    if (name == "svc") {
        return ModelKind::Svc;
    }
    if (name == "xgb" || name == "gbt") {
        return ModelKind::Gbt;
    }
    throw ParameterError("unknown classifier '" + name + "' (expected svc or xgb)");
}

std::string describe(const GridPoint &point) {
    std::ostringstream os;
    for (std::size_t i = 0; i < point.size(); ++i) {
        os << (i ? " " : "") << point[i].first << '=' << point[i].second;
    }
    return os.str();
}

std::size_t HyperparamGrid::size() const {
    if (axes.empty()) {
        return 0;
    }
    std::size_t total = 1;
    for (const auto &axis : axes) {
        total *= axis.values.size();
    }
    return total;
}

GridPoint HyperparamGrid::point(std::size_t index) const {
    if (index >= size()) {
        throw IndexError("grid point " + std::to_string(index) + " out of range");
    }
    GridPoint p(axes.size());
    for (std::size_t a = axes.size(); a-- > 0;) {
        const auto &values = axes[a].values;
        p[a] = {axes[a].name, values[index % values.size()]};
        index /= values.size();
    }
    return p;
}

std::vector<GridPoint> HyperparamGrid::points() const {
    std::vector<GridPoint> out;
    out.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) {
        out.push_back(point(i));
    }
    return out;
}

namespace {

std::vector<double> powers_of_two(int lo, int hi) {
    std::vector<double> v;
    for (int e = lo; e <= hi; ++e) {
        v.push_back(std::ldexp(1.0, e));
    }
    return v;
}

} // namespace

HyperparamGrid grid_preset(const std::string &name) {
    if (name == "svc-reference") {
        return {{{"gamma_kernel", powers_of_two(-8, 4)}, {"C", powers_of_two(-7, 7)}}};
    }
    if (name == "xgb-reference") {
        return {{{"max_depth", {2, 3, 5}},
                 {"n_estimators", {100, 200}},
                 {"learning_rate", {0.1, 0.01, 0.05}},
                 {"subsample", {0.8, 1}},
                 {"colsample_bytree", {0.8, 1}},
                 {"gamma_split", {0, 0.1}}}};
    }
    if (name == "svc-desk") {
        return {{{"gamma_kernel", {0.25, 1.0, 4.0}}, {"C", {1.0, 8.0}}}};
    }
    if (name == "xgb-desk") {
        return {{{"max_depth", {2, 3}},
                 {"n_estimators", {50}},
                 {"learning_rate", {0.1}},
                 {"subsample", {0.8}},
                 {"colsample_bytree", {1}},
                 {"gamma_split", {0}}}};
    }
    throw ParameterError("unknown grid preset '" + name + "'");
}

std::vector<std::string> grid_preset_names() {
    return {"svc-reference", "xgb-reference", "svc-desk", "xgb-desk"};
}

ModelKind grid_preset_kind(const std::string &name) {
    grid_preset(name);
    return name.rfind("svc", 0) == 0 ? ModelKind::Svc : ModelKind::Gbt;
}

void check_point(ModelKind kind, const GridPoint &point) {
    for (const auto &[key, value] : point) {
        bool known = false;
        if (kind == ModelKind::Svc) {
            known = key == "gamma_kernel" || key == "C";
        } else {
            for (const char *k : {"max_depth", "n_estimators", "learning_rate", "subsample",
                                  "colsample_bytree", "gamma_split", "lambda",
                                  "min_child_weight"}) {
                known = known || key == k;
            }
        }
        if (!known) {
            throw ParameterError("parameter '" + key + "' does not apply to " +
                                 to_string(kind));
        }
        if (!std::isfinite(value)) {
            throw ParameterError("parameter '" + key + "' is not finite");
        }
    }
}

GbtParams gbt_params(const GridPoint &point, std::uint64_t seed) {
    GbtParams p;
    p.seed = seed;
    for (const auto &[key, value] : point) {
        if (key == "max_depth") {
            p.max_depth = static_cast<int>(value);
        } else if (key == "n_estimators") {
            p.n_estimators = static_cast<int>(value);
        } else if (key == "learning_rate") {
            p.learning_rate = value;
        } else if (key == "subsample") {
            p.subsample = value;
        } else if (key == "colsample_bytree") {
            p.colsample_bytree = value;
        } else if (key == "gamma_split") {
            p.gamma_split = value;
        } else if (key == "lambda") {
            p.lambda = value;
        } else if (key == "min_child_weight") {
            p.min_child_weight = value;
        }
    }
    return p;
}

std::vector<double> Model::decision(const RowMatrix &x) const {
    return std::visit([&x](const auto &m) { return m.decision(x); }, impl_);
}

Model fit_model(ModelKind kind, const GridPoint &point, const RowMatrix &x, const Labels &y,
                std::uint64_t seed) {
    check_point(kind, point);
    if (kind == ModelKind::Svc) {
        double c = 1.0;
        double gamma = 1.0;
        for (const auto &[key, value] : point) {
            (key == "C" ? c : gamma) = value;
        }
        return Model(train_svm(x, y, c, gamma));
    }
    return Model(train_gbt(x, y, gbt_params(point, seed)));
}

} // namespace qfeo::learn
