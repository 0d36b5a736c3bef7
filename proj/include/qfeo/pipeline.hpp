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

#include "qfeo/bayesopt.hpp"
#include "qfeo/data.hpp"
#include "qfeo/featuremaps.hpp"
#include "qfeo/learn/cv.hpp"
#include "qfeo/manipulate.hpp"
#include "qfeo/matrix.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace qfeo::pipeline {

struct ExperimentConfig {
    fmap::FeatureMapConfig feature_map;
    manip::ManipulationSpec manipulation;

    learn::ModelKind classifier{learn::ModelKind::Svc};
    learn::HyperparamGrid grid;

    int bo_iterations{100};
    int bo_init{10};
    bo::GpOptions gp;
    bo::SuggestOptions acquisition;

    int grid_folds{5};
    int score_folds{10};

    int n_batches{10};
    double test_fraction{0.33};
    bool balance{false};

    double rescale_lo{0.3};
    double rescale_hi{2.8};

    std::uint64_t seed{0};

    void validate(std::size_t n_features) const;
};

/// Seeds of one batch, all derived from the experiment seed.
struct BatchSeeds {
    std::uint64_t split;
    std::uint64_t grid;
    std::uint64_t score;
    std::uint64_t bo;
    std::uint64_t refit;

    static BatchSeeds make(std::uint64_t seed, int batch);
};

/// Train/test matrices of one batch, rescaled with the train-fitted map.
struct PreparedBatch {
    int index{0};
    RowMatrix train_x;
    Labels train_y;
    RowMatrix test_x;
    Labels test_y;
    BatchSeeds seeds{};
};

PreparedBatch prepare_batch(const data::Dataset &ds, const data::Split &split, int index,
                            const ExperimentConfig &cfg);

std::vector<PreparedBatch> prepare_batches(const data::Dataset &ds, const ExperimentConfig &cfg);

struct PipelineScore {
    learn::GridSearchResult grid;
    learn::CvScore cv;
};

/// Manipulate, project, grid-search the classifier, then score the chosen
/// point with K-fold CV on the train split. Throws on failure.
PipelineScore score_pipeline(std::span<const double> weights, const PreparedBatch &batch,
                             const ExperimentConfig &cfg, const fmap::FeatureMap &map);

double evaluate_pipeline(std::span<const double> weights, const PreparedBatch &batch,
                         const ExperimentConfig &cfg, const fmap::FeatureMap &map);

struct TestScore {
    double auc{0.0};
    learn::GridPoint chosen;
};

/// Refits the grid-chosen classifier on the full train split and scores
/// the test split encoded with the same weights.
TestScore test_auc(std::span<const double> weights, const PreparedBatch &batch,
                   const ExperimentConfig &cfg, const fmap::FeatureMap &map);

struct BatchResult {
    int index{0};
    bo::OptTrace trace;
    std::vector<double> best_weights;
    double qfeo_cv{0.0};
    double qfeo_test_auc{0.0};
    learn::GridPoint qfeo_chosen;
    double nfo_cv{0.0};
    double nfo_test_auc{0.0};
    learn::GridPoint nfo_chosen;
    /// Source feature per encoding slot under the best weights.
    std::vector<int> source_indices;
    double percent_change() const;
};

struct Aggregate {
    double qfeo_mean{0.0};
    double qfeo_std{0.0};
    double nfo_mean{0.0};
    double nfo_std{0.0};
    double percent_change{0.0};
    /// Sample std of the per-batch percent changes (0 for a single batch).
    double percent_std{0.0};
};

struct QfeoResult {
    std::vector<BatchResult> batches;
    Aggregate aggregate;
};

double sample_std(const std::vector<double> &values);
double percent_change(double base, double value);
Aggregate aggregate(const std::vector<BatchResult> &batches);

QfeoResult run_qfeo(const std::vector<PreparedBatch> &batches, const ExperimentConfig &cfg);

/// Test AUCs for `draws` uniform weight vectors, drawn from the same seed as
/// the optimizer's initial design.
std::vector<double> random_weight_baseline(const PreparedBatch &batch, const ExperimentConfig &cfg,
                                           int draws);

struct ImportanceTable {
    std::string name;
    std::vector<std::string> columns;
    /// One row per input feature.
    std::vector<std::vector<double>> rows;
};

struct ImportanceReport {
    std::vector<ImportanceTable> tables;
    std::string note;
};

ImportanceReport feature_importance(const QfeoResult &result, const manip::ManipulationSpec &spec,
                                    std::size_t n_features);

} // namespace qfeo::pipeline
