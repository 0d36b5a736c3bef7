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
#include "qfeo/pipeline.hpp"

#include "qfeo/errors.hpp"
#include "qfeo/learn/auc.hpp"
#include "qfeo/log.hpp"
#include "qfeo/parallel.hpp"
#include "qfeo/pqfm.hpp"
#include "qfeo/rng.hpp"

#include <cmath>
#include <limits>

namespace qfeo::pipeline {

void ExperimentConfig::validate(std::size_t n_features) const {
    feature_map.validate();
    manipulation.validate(n_features);
    const std::size_t encoded =
        (manipulation.selects() ? static_cast<std::size_t>(manipulation.r) : n_features) *
        (feature_map.reload ? 2 : 1);
    const std::size_t cap = feature_map.capacity();
    if (cap != fmap::kUnbounded && encoded > cap) {
        throw EncodingError("feature map capacity " + std::to_string(cap) + " is below the " +
                            std::to_string(encoded) + " encoded values");
    }
    if (grid.size() == 0) {
        throw ParameterError("classifier grid is empty");
    }
    for (const auto &p : grid.points()) {
        learn::check_point(classifier, p);
    }
    if (bo_init < 1 || bo_iterations < bo_init) {
        throw ParameterError("BO requires 1 <= n_init <= iterations");
    }
    if (grid_folds < 2 || score_folds < 2) {
        throw ParameterError("fold counts must be at least 2");
    }
    if (n_batches < 1) {
        throw ParameterError("need at least one batch");
    }
    if (!(rescale_hi > rescale_lo)) {
        throw ParameterError("rescale interval requires hi > lo");
    }
}

BatchSeeds BatchSeeds::make(std::uint64_t seed, int batch) {
    const auto b = static_cast<std::uint64_t>(batch);
    return {derive_seed(seed, 1), derive_seed(seed, 2, b), derive_seed(seed, 3, b),
            derive_seed(seed, 4, b), derive_seed(seed, 5, b)};
}

PreparedBatch prepare_batch(const data::Dataset &ds, const data::Split &split, int index,
                            const ExperimentConfig &cfg) {
    PreparedBatch b;
    b.index = index;
    b.seeds = BatchSeeds::make(cfg.seed, index);
    const RowMatrix train = take_rows(ds.features, split.train);
    const RowMatrix test = take_rows(ds.features, split.test);
    manip::MinMaxScaler scaler(cfg.rescale_lo, cfg.rescale_hi);
    scaler.fit(train);
    b.train_x = scaler.transform(train);
    b.test_x = scaler.transform(test);
    b.train_y = take(ds.labels, split.train);
    b.test_y = take(ds.labels, split.test);
    return b;
}

std::vector<PreparedBatch> prepare_batches(const data::Dataset &ds, const ExperimentConfig &cfg) {
    if (ds.rows() < 4) {
        throw DataError("dataset needs at least 4 rows");
    }
    const auto splits = data::stratified_batches(ds.labels, cfg.n_batches, cfg.test_fraction,
                                                 cfg.balance, BatchSeeds::make(cfg.seed, 0).split);
    std::vector<PreparedBatch> out;
    for (std::size_t b = 0; b < splits.size(); ++b) {
        out.push_back(prepare_batch(ds, splits[b], static_cast<int>(b), cfg));
    }
    return out;
}

PipelineScore score_pipeline(std::span<const double> weights, const PreparedBatch &batch,
                             const ExperimentConfig &cfg, const fmap::FeatureMap &map) {
    const auto plan = manip::make_plan(cfg.manipulation, weights,
                                       static_cast<std::size_t>(batch.train_x.cols()));
    const auto projected = pqfm::project(batch.train_x, batch.train_y, map, plan);
    PipelineScore s;
    s.grid = learn::grid_search_cv(projected.features, projected.labels, cfg.classifier, cfg.grid,
                                   cfg.grid_folds, batch.seeds.grid);
    if (!std::isfinite(s.grid.score)) {
        throw TrainingError("every grid point failed");
    }
    s.cv = learn::kfold_cv_score(projected.features, projected.labels, cfg.classifier,
                                 s.grid.point, cfg.score_folds, batch.seeds.score);
    return s;
}

double evaluate_pipeline(std::span<const double> weights, const PreparedBatch &batch,
                         const ExperimentConfig &cfg, const fmap::FeatureMap &map) {
    return score_pipeline(weights, batch, cfg, map).cv.mean_auc;
}

TestScore test_auc(std::span<const double> weights, const PreparedBatch &batch,
                   const ExperimentConfig &cfg, const fmap::FeatureMap &map) {
    const auto plan = manip::make_plan(cfg.manipulation, weights,
                                       static_cast<std::size_t>(batch.train_x.cols()));
    const auto train = pqfm::project(batch.train_x, batch.train_y, map, plan);
    const auto gs = learn::grid_search_cv(train.features, train.labels, cfg.classifier, cfg.grid,
                                          cfg.grid_folds, batch.seeds.grid);
    if (!std::isfinite(gs.score)) {
        throw TrainingError("every grid point failed");
    }
    const auto model =
        learn::fit_model(cfg.classifier, gs.point, train.features, train.labels, batch.seeds.refit);
    const auto test = pqfm::project(batch.test_x, batch.test_y, map, plan);
    return {learn::auc(model.decision(test.features), test.labels), gs.point};
}

double BatchResult::percent_change() const {
    return pipeline::percent_change(nfo_test_auc, qfeo_test_auc);
}

double sample_std(const std::vector<double> &values) {
    if (values.size() < 2) {
        return 0.0;
    }
    const double m = learn::mean(values);
    double ss = 0.0;
    for (double v : values) {
        ss += (v - m) * (v - m);
    }
    return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

double percent_change(double base, double value) { return (value - base) / base * 100.0; }

Aggregate aggregate(const std::vector<BatchResult> &batches) {
    std::vector<double> q;
    std::vector<double> n;
    std::vector<double> pct;
    for (const auto &b : batches) {
        q.push_back(b.qfeo_test_auc);
        n.push_back(b.nfo_test_auc);
        pct.push_back(b.percent_change());
    }
    Aggregate a;
    a.qfeo_mean = learn::mean(q);
    a.qfeo_std = sample_std(q);
    a.nfo_mean = learn::mean(n);
    a.nfo_std = sample_std(n);
    a.percent_change = percent_change(a.nfo_mean, a.qfeo_mean);
    a.percent_std = sample_std(pct);
    return a;
}

namespace {

BatchResult run_batch(const PreparedBatch &batch, const ExperimentConfig &cfg,
                      const fmap::FeatureMap &map) {
    BatchResult r;
    r.index = batch.index;
    const auto p = static_cast<std::size_t>(batch.train_x.cols());

    ExperimentConfig nfo = cfg;
    nfo.manipulation = {manip::Kind::NFO, 0};
    r.nfo_cv = evaluate_pipeline({}, batch, nfo, map);
    const auto nfo_test = test_auc({}, batch, nfo, map);
    r.nfo_test_auc = nfo_test.auc;
    r.nfo_chosen = nfo_test.chosen;

    const int m = static_cast<int>(cfg.manipulation.weight_count(p));
    if (m == 0) {
        r.qfeo_cv = r.nfo_cv;
        r.qfeo_test_auc = r.nfo_test_auc;
        r.qfeo_chosen = r.nfo_chosen;
        r.source_indices = manip::make_plan(cfg.manipulation, {}, p).source;
        return r;
    }

    bo::OptimizeOptions opts;
    opts.iterations = cfg.bo_iterations;
    opts.n_init = cfg.bo_init;
    opts.seed = batch.seeds.bo;
    opts.gp = cfg.gp;
    opts.acquisition = cfg.acquisition;
    r.trace = bo::optimize(
        [&](std::span<const double> w) { return evaluate_pipeline(w, batch, cfg, map); }, m, opts);
    if (!std::isfinite(r.trace.best_value)) {
        throw TrainingError("no BO iteration produced a finite score");
    }
    r.best_weights = r.trace.best_weights;
    r.qfeo_cv = r.trace.best_value;
    const auto final_test = test_auc(r.best_weights, batch, cfg, map);
    r.qfeo_test_auc = final_test.auc;
    r.qfeo_chosen = final_test.chosen;
    r.source_indices = manip::make_plan(cfg.manipulation, r.best_weights, p).source;
    return r;
}

} // namespace

QfeoResult run_qfeo(const std::vector<PreparedBatch> &batches, const ExperimentConfig &cfg) {
    if (batches.empty()) {
        throw ParameterError("run_qfeo needs at least one batch");
    }
    cfg.validate(static_cast<std::size_t>(batches.front().train_x.cols()));
    const fmap::FeatureMap map(cfg.feature_map);
    QfeoResult result;
    result.batches.resize(batches.size());
    parallel_for(batches.size(), [&](std::size_t b) {
        try {
            result.batches[b] = run_batch(batches[b], cfg, map);
        } catch (const Error &e) {
            throw TrainingError("batch " + std::to_string(batches[b].index) + ": " + e.what());
        }
        log::info("batch ", batches[b].index, " done: qfeo test AUC ",
                  result.batches[b].qfeo_test_auc, ", nfo ", result.batches[b].nfo_test_auc);
    });
    result.aggregate = aggregate(result.batches);
    return result;
}

std::vector<double> random_weight_baseline(const PreparedBatch &batch, const ExperimentConfig &cfg,
                                           int draws) {
    const auto p = static_cast<std::size_t>(batch.train_x.cols());
    const auto m = cfg.manipulation.weight_count(p);
    const fmap::FeatureMap map(cfg.feature_map);
    Rng rng(batch.seeds.bo);
    std::vector<std::vector<double>> weights(static_cast<std::size_t>(draws));
    for (auto &w : weights) {
        w.resize(m);
        for (auto &v : w) {
            v = rng.uniform();
        }
    }
    std::vector<double> aucs(weights.size());
    parallel_for(weights.size(),
                 [&](std::size_t i) { aucs[i] = test_auc(weights[i], batch, cfg, map).auc; });
    return aucs;
}

ImportanceReport feature_importance(const QfeoResult &result, const manip::ManipulationSpec &spec,
                                    std::size_t n_features) {
    using manip::Kind;
    ImportanceReport report;
    if (spec.kind == Kind::NFO) {
        report.note = "NFO encodes features unchanged; no importance is defined";
        return report;
    }
    const double nb = static_cast<double>(result.batches.size());
    const double nan = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> frequency(n_features, 0.0);
    std::vector<double> rank_sum(n_features, 0.0);
    std::vector<double> rank_count(n_features, 0.0);
    std::vector<double> weight_sum(n_features, 0.0);
    std::vector<double> order_weight_sum(n_features, 0.0);
    for (const auto &b : result.batches) {
        for (std::size_t k = 0; k < b.source_indices.size(); ++k) {
            const auto f = static_cast<std::size_t>(b.source_indices[k]);
            frequency[f] += 1.0 / nb;
            rank_sum[f] += static_cast<double>(k + 1);
            rank_count[f] += 1.0;
        }
        for (std::size_t f = 0; f < n_features && f < b.best_weights.size(); ++f) {
            weight_sum[f] += b.best_weights[f] / nb;
            if (spec.kind == Kind::FWOW) {
                order_weight_sum[f] += b.best_weights[n_features + f] / nb;
            }
        }
    }
    auto mean_rank = [&](std::size_t f) {
        return rank_count[f] > 0 ? rank_sum[f] / rank_count[f] : nan;
    };

    ImportanceTable t;
    t.name = to_string(spec.kind);
    for (std::size_t f = 0; f < n_features; ++f) {
        std::vector<double> row;
        switch (spec.kind) {
        case Kind::FS:
            row = {frequency[f]};
            break;
        case Kind::FSO:
            row = {frequency[f], mean_rank(f)};
            break;
        case Kind::FO:
            row = {mean_rank(f)};
            break;
        case Kind::FW:
            row = {weight_sum[f]};
            break;
        case Kind::FWO:
        case Kind::FWOW:
            row = {weight_sum[f], mean_rank(f)};
            break;
        case Kind::NFO:
            break;
        }
        t.rows.push_back(std::move(row));
    }
    switch (spec.kind) {
    case Kind::FS:
        t.columns = {"selection_frequency"};
        break;
    case Kind::FSO:
        t.columns = {"selection_frequency", "mean_rank"};
        break;
    case Kind::FO:
        t.columns = {"mean_rank"};
        break;
    case Kind::FW:
        t.columns = {"mean_weight"};
        break;
    case Kind::FWO:
        t.columns = {"mean_weight", "mean_rank"};
        break;
    default:
        break;
    }
    if (spec.kind != Kind::FWOW) {
        report.tables.push_back(std::move(t));
        return report;
    }

    ImportanceTable weighting{"FWOW-weighting", {"mean_weight"}, {}};
    ImportanceTable ordering{"FWOW-ordering", {"mean_order_weight", "mean_rank"}, {}};
    for (std::size_t f = 0; f < n_features; ++f) {
        weighting.rows.push_back({weight_sum[f]});
        ordering.rows.push_back({order_weight_sum[f], mean_rank(f)});
    }
    report.tables.push_back(std::move(weighting));
    report.tables.push_back(std::move(ordering));
    return report;
}

} // namespace qfeo::pipeline
