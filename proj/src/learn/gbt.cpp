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
#include "qfeo/learn/gbt.hpp"

#include "qfeo/errors.hpp"
#include "qfeo/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>

namespace qfeo::learn {

void GbtParams::validate() const {
    if (n_estimators < 1) {
        throw ParameterError("gbt: n_estimators must be at least 1");
    }
    if (max_depth < 1) {
        throw ParameterError("gbt: max_depth must be at least 1");
    }
    if (!(learning_rate > 0.0)) {
        throw ParameterError("gbt: learning_rate must be positive");
    }
    if (!(subsample > 0.0 && subsample <= 1.0) ||
        !(colsample_bytree > 0.0 && colsample_bytree <= 1.0)) {
        throw ParameterError("gbt: subsample and colsample_bytree must lie in (0, 1]");
    }
    if (gamma_split < 0.0 || lambda < 0.0 || min_child_weight < 0.0) {
        throw ParameterError("gbt: gamma_split, lambda and min_child_weight must be >= 0");
    }
}

namespace {

struct Builder {
    const RowMatrix &x;
    const std::vector<double> &g;
    const std::vector<double> &h;
    const std::vector<int> &features;
    const GbtParams &params;
    GbtModel::Tree tree;

    double leaf_weight(double gs, double hs) const {
        return -gs / (hs + params.lambda) * params.learning_rate;
    }

    int grow(std::vector<int> rows, int depth) {
        double gs = 0.0;
        double hs = 0.0;
        for (int r : rows) {
            gs += g[static_cast<std::size_t>(r)];
            hs += h[static_cast<std::size_t>(r)];
        }
        const int id = static_cast<int>(tree.size());
        tree.push_back({});
        tree[static_cast<std::size_t>(id)].value = leaf_weight(gs, hs);
        if (depth >= params.max_depth || rows.size() < 2) {
            return id;
        }

        const double parent = gs * gs / (hs + params.lambda);
        double best_gain = 0.0;
        int best_feature = -1;
        double best_threshold = 0.0;
        std::vector<int> sorted = rows;
        for (int f : features) {
            std::sort(sorted.begin(), sorted.end(), [&](int a, int b) {
                const double va = x(a, f);
                const double vb = x(b, f);
                return va < vb || (va == vb && a < b);
            });
            double gl = 0.0;
            double hl = 0.0;
            for (std::size_t k = 0; k + 1 < sorted.size(); ++k) {
                gl += g[static_cast<std::size_t>(sorted[k])];
                hl += h[static_cast<std::size_t>(sorted[k])];
                const double v = x(sorted[k], f);
                const double next = x(sorted[k + 1], f);
                if (v == next) {
                    continue;
                }
                const double gr = gs - gl;
                const double hr = hs - hl;
                if (hl < params.min_child_weight || hr < params.min_child_weight) {
                    continue;
                }
                const double gain = 0.5 * (gl * gl / (hl + params.lambda) +
                                           gr * gr / (hr + params.lambda) - parent) -
                                    params.gamma_split;
                if (gain > best_gain) {
                    best_gain = gain;
                    best_feature = f;
                    best_threshold = 0.5 * (v + next);
                }
            }
        }
        if (best_feature < 0) {
            return id;
        }

        std::vector<int> left;
        std::vector<int> right;
        for (int r : rows) {
            (x(r, best_feature) < best_threshold ? left : right).push_back(r);
        }
        rows.clear();
        rows.shrink_to_fit();
        const int l = grow(std::move(left), depth + 1);
        const int rgt = grow(std::move(right), depth + 1);
        auto &node = tree[static_cast<std::size_t>(id)];
        node.feature = best_feature;
        node.threshold = best_threshold;
        node.left = l;
        node.right = rgt;
        return id;
    }
};

double predict_tree(const GbtModel::Tree &tree, const double *row) {
    int node = 0;
    while (tree[static_cast<std::size_t>(node)].feature >= 0) {
        const auto &nd = tree[static_cast<std::size_t>(node)];
        node = row[nd.feature] < nd.threshold ? nd.left : nd.right;
    }
    return tree[static_cast<std::size_t>(node)].value;
}

std::vector<int> sample_without_replacement(Rng &rng, int population, double fraction) {
    std::vector<int> all(static_cast<std::size_t>(population));
    std::iota(all.begin(), all.end(), 0);
    if (fraction >= 1.0) {
        return all;
    }
    const auto keep = static_cast<std::size_t>(
        std::max(1.0, std::floor(fraction * static_cast<double>(population))));
    rng.shuffle(std::span<int>(all));
    all.resize(keep);
    std::sort(all.begin(), all.end());
    return all;
}

} // namespace

GbtModel train_gbt(const RowMatrix &x, const Labels &y, const GbtParams &params) {
    params.validate();
    if (static_cast<std::size_t>(x.rows()) != y.size()) {
        throw ShapeError("train_gbt: row/label count mismatch");
    }
    int counts[2] = {0, 0};
    for (int v : y) {
        if (v != 0 && v != 1) {
            throw TrainingError("gbt: labels must be 0 or 1");
        }
        ++counts[v];
    }
    if (counts[0] == 0 || counts[1] == 0) {
        throw TrainingError("gbt: both classes are required");
    }

    const auto n = static_cast<std::size_t>(x.rows());
    GbtModel model;
    model.n_features_ = x.cols();
    std::vector<double> margin(n, 0.0);
    std::vector<double> g(n);
    std::vector<double> h(n);
    Rng rng(params.seed);
    for (int t = 0; t < params.n_estimators; ++t) {
        for (std::size_t i = 0; i < n; ++i) {
            const double p = 1.0 / (1.0 + std::exp(-margin[i]));
            g[i] = p - static_cast<double>(y[i]);
            h[i] = std::max(p * (1.0 - p), 1e-16);
        }
        const auto rows = sample_without_replacement(rng, static_cast<int>(n), params.subsample);
        const auto features =
            sample_without_replacement(rng, static_cast<int>(x.cols()), params.colsample_bytree);
        Builder builder{x, g, h, features, params, {}};
        builder.grow(rows, 0);
        for (std::size_t i = 0; i < n; ++i) {
            margin[i] += predict_tree(builder.tree, x.row(static_cast<Eigen::Index>(i)).data());
        }
        model.trees_.push_back(std::move(builder.tree));
    }
    return model;
}

double GbtModel::decision(const double *row) const {
    double sum = 0.0;
    for (const auto &tree : trees_) {
        sum += predict_tree(tree, row);
    }
    return sum;
}

std::vector<double> GbtModel::decision(const RowMatrix &x) const {
    if (x.cols() != n_features_) {
        throw ShapeError("gbt decision: column count mismatch");
    }
    std::vector<double> out(static_cast<std::size_t>(x.rows()));
    for (Eigen::Index r = 0; r < x.rows(); ++r) {
        out[static_cast<std::size_t>(r)] = decision(x.row(r).data());
    }
    return out;
}

} // namespace qfeo::learn
