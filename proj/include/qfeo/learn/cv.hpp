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

#include "qfeo/learn/folds.hpp"
#include "qfeo/learn/grid.hpp"
#include "qfeo/matrix.hpp"

#include <cstdint>
#include <vector>

namespace qfeo::learn {

struct CvScore {
    double mean_auc{0.0};
    std::vector<double> fold_aucs;
    GridPoint chosen;
};

struct GridSearchResult {
    std::size_t index{0};
    GridPoint point;
    double score{0.0};
    /// Mean fold AUC per grid point; failed points hold -infinity.
    std::vector<double> scores;
};

/// Per-fold test AUCs of one model configuration. Fold f trains with seed
/// derive_seed(seed, f) so stochastic models are reproducible per fold.
std::vector<double> fold_aucs(const RowMatrix &x, const Labels &y, ModelKind kind,
                              const GridPoint &point, const std::vector<Fold> &folds,
                              std::uint64_t seed);

double mean(const std::vector<double> &values);

/// Stratified k-fold mean AUC for every grid point; the first maximum wins.
/// A point whose training fails scores -infinity and is logged.
GridSearchResult grid_search_cv(const RowMatrix &x, const Labels &y, ModelKind kind,
                                const HyperparamGrid &grid, int folds, std::uint64_t seed);

CvScore kfold_cv_score(const RowMatrix &x, const Labels &y, ModelKind kind,
                       const GridPoint &point, int k, std::uint64_t seed);

} // namespace qfeo::learn
