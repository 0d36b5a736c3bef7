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
#include "qfeo/learn/cv.hpp"

#include "qfeo/errors.hpp"
#include "qfeo/learn/auc.hpp"
#include "qfeo/log.hpp"
#include "qfeo/parallel.hpp"
#include "qfeo/rng.hpp"

#include <limits>
#include <optional>

namespace qfeo::learn {

namespace {

double one_fold(const RowMatrix &x, const Labels &y, ModelKind kind, const GridPoint &point,
                const Fold &fold, std::uint64_t seed) {
    const Model model = fit_model(kind, point, take_rows(x, fold.train), take(y, fold.train), seed);
    const auto scores = model.decision(take_rows(x, fold.test));
    const auto labels = take(y, fold.test);
    return auc(scores, labels);
}

} // namespace

double mean(const std::vector<double> &values) {
    double sum = 0.0;
    for (double v : values) {
        sum += v;
    }
    return values.empty() ? 0.0 : sum / static_cast<double>(values.size());
}

std::vector<double> fold_aucs(const RowMatrix &x, const Labels &y, ModelKind kind,
                              const GridPoint &point, const std::vector<Fold> &folds,
                              std::uint64_t seed) {
    std::vector<double> out(folds.size());
    parallel_for(folds.size(), [&](std::size_t f) {
        out[f] = one_fold(x, y, kind, point, folds[f], derive_seed(seed, f));
    });
    return out;
}

GridSearchResult grid_search_cv(const RowMatrix &x, const Labels &y, ModelKind kind,
                                const HyperparamGrid &grid, int folds, std::uint64_t seed) {
    const auto points = grid.points();
    if (points.empty()) {
        throw ParameterError("grid search over an empty grid");
    }
    for (const auto &p : points) {
        check_point(kind, p);
    }
    const auto split = stratified_kfold(y, folds, seed);
    const std::size_t nf = split.size();

    // Every (point, fold) pair is an independent task; reduction is ordered.
    std::vector<double> cell(points.size() * nf, 0.0);
    std::vector<std::optional<std::string>> failure(points.size() * nf);
    parallel_for(cell.size(), [&](std::size_t task) {
        const std::size_t p = task / nf;
        const std::size_t f = task % nf;
        try {
            cell[task] = one_fold(x, y, kind, points[p], split[f], derive_seed(seed, f));
        } catch (const Error &e) {
            failure[task] = e.what();
        }
    });

    GridSearchResult result;
    result.scores.assign(points.size(), -std::numeric_limits<double>::infinity());
    bool found = false;
    for (std::size_t p = 0; p < points.size(); ++p) {
        std::vector<double> aucs;
        bool failed = false;
        for (std::size_t f = 0; f < nf; ++f) {
            if (failure[p * nf + f]) {
                log::warn("grid point [", describe(points[p]), "] failed on fold ", f, ": ",
                          *failure[p * nf + f]);
                failed = true;
                break;
            }
            aucs.push_back(cell[p * nf + f]);
        }
        if (!failed) {
            result.scores[p] = mean(aucs);
        }
        if (!found || result.scores[p] > result.score) {
            result.index = p;
            result.score = result.scores[p];
            found = true;
        }
    }
    result.point = points[result.index];
    return result;
}

CvScore kfold_cv_score(const RowMatrix &x, const Labels &y, ModelKind kind,
                       const GridPoint &point, int k, std::uint64_t seed) {
    CvScore score;
    score.chosen = point;
    score.fold_aucs = fold_aucs(x, y, kind, point, stratified_kfold(y, k, seed), seed);
    score.mean_auc = mean(score.fold_aucs);
    return score;
}

} // namespace qfeo::learn
