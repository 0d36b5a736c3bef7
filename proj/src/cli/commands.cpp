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
#include "qfeo/cli/commands.hpp"

#include "qfeo/cli/digest.hpp"
#include "qfeo/data.hpp"
#include "qfeo/errors.hpp"
#include "qfeo/format.hpp"
#include "qfeo/expressibility.hpp"
#include "qfeo/log.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#ifndef QFEO_VERSION
#define QFEO_VERSION "0.0.0"
#endif

namespace qfeo::cli {

namespace fs = std::filesystem;

std::string tool_version() { return QFEO_VERSION; }

namespace {

std::string num(double v) {
    if (std::isnan(v)) {
        return "";
    }
    return format_double(v);
}

json jnum(double v) { return std::isfinite(v) ? json(v) : json(); }

std::ofstream open_out(const fs::path &path) {
    fs::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) {
        throw DataError("cannot open " + path.string() + " for writing");
    }
    return out;
}

void write_text(const fs::path &path, const std::string &text) { open_out(path) << text; }

json point_json(const learn::GridPoint &p) {
    json j = json::object();
    for (const auto &[k, v] : p) {
        j[k] = v;
    }
    return j;
}

data::Dataset load_dataset(const DatasetEntry &e) {
    if (e.synthetic) {
        const auto &s = *e.synthetic;
        return data::synthetic_planted(s.d, s.p, s.k, s.noise_sd, s.seed);
    }
    return data::load_csv(e.csv);
}

std::string run_dir_name(const std::string &dataset, const std::string &fm, int n,
                         manip::Kind kind) {
    return dataset + "__" + fm + "__q" + std::to_string(n) + "__" + manip::to_string(kind);
}

int report_error(const std::string &context, const std::exception &e, int code) {
    std::cerr << "qfeo " << context << ": " << e.what() << '\n';
    return code;
}

struct Combination {
    const DatasetEntry *dataset;
    const FeatureMapEntry *feature_map;
    int n_qubits;
    const ManipulationEntry *manipulation;
    pipeline::ExperimentConfig experiment;
    std::string dir;
};

void write_importance(const pipeline::ImportanceReport &report,
                      const std::vector<std::string> &names, const fs::path &dir) {
    for (const auto &t : report.tables) {
        auto out = open_out(dir / ("importance_" + t.name + ".csv"));
        out << "feature";
        for (const auto &c : t.columns) {
            out << ',' << c;
        }
        out << '\n';
        for (std::size_t f = 0; f < t.rows.size(); ++f) {
            out << names[f];
            for (double v : t.rows[f]) {
                out << ',' << num(v);
            }
            out << '\n';
        }
    }
}

json importance_json(const pipeline::ImportanceReport &report) {
    json tables = json::array();
    for (const auto &t : report.tables) {
        json rows = json::array();
        for (const auto &r : t.rows) {
            json row = json::array();
            for (double v : r) {
                row.push_back(jnum(v));
            }
            rows.push_back(row);
        }
        tables.push_back({{"name", t.name}, {"columns", t.columns}, {"rows", rows}});
    }
    return {{"note", report.note}, {"tables", tables}};
}

} // namespace

int cmd_run(const std::string &config_path, const std::string &out_dir,
            const RunOptions &options) {
    RunConfig cfg;
    std::vector<data::Dataset> datasets;
    std::vector<Combination> combos;
    try {
        cfg = load_run_config(config_path);
        if (options.seed) {
            cfg.seed = *options.seed;
        }
        if (options.preset) {
            apply_preset_override(cfg, *options.preset);
        }
        for (const auto &d : cfg.datasets) {
            datasets.push_back(load_dataset(d));
        }
        for (std::size_t di = 0; di < cfg.datasets.size(); ++di) {
            const auto p = datasets[di].cols();
            for (const auto &fm : cfg.feature_maps) {
                for (int n : cfg.qubits) {
                    for (const auto &m : cfg.manipulations) {
                        Combination c{&cfg.datasets[di], &fm, n, &m,
                                      make_experiment(cfg, fm, n, m, cfg.datasets[di], p),
                                      run_dir_name(cfg.datasets[di].name, fm.label(), n, m.kind)};
                        try {
                            c.experiment.validate(p);
                        } catch (const Error &e) {
                            throw ConfigError(c.dir + ": " + e.what());
                        }
                        if (datasets[di].rows() < 4) {
                            throw ConfigError(cfg.datasets[di].name + ": need at least 4 rows");
                        }
                        combos.push_back(std::move(c));
                    }
                }
            }
        }
    } catch (const ConfigError &e) {
        return report_error("config error", e, kExitConfig);
    } catch (const DataError &e) {
        return report_error("input error", e, kExitConfig);
    } catch (const Error &e) {
        return report_error("config error", e, kExitConfig);
    }

    const fs::path out(out_dir);
    try {
        // Manifest first, so an interrupted run is still reproducible.
        json inputs = json::array();
        inputs.push_back({{"role", "config"},
                          {"path", fs::absolute(config_path).lexically_normal().string()},
                          {"sha256", sha256_file(config_path)}});
        for (const auto &d : cfg.datasets) {
            if (!d.csv.empty()) {
                inputs.push_back({{"role", "dataset:" + d.name},
                                  {"path", fs::absolute(d.csv).lexically_normal().string()},
                                  {"sha256", sha256_file(d.csv)}});
            }
        }
        json outputs = json::array({"summary.csv"});
        json seeds{{"run", cfg.seed}};
        for (const auto &d : cfg.datasets) {
            outputs.push_back("datasets/" + d.name + "/batches.json");
            if (d.synthetic) {
                seeds["synthetic:" + d.name] = d.synthetic->seed;
            }
        }
        for (const auto &c : combos) {
            outputs.push_back("runs/" + c.dir + "/");
        }
        const json manifest{{"manifest_version", 1},
                            {"tool", "qfeo"},
                            {"version", tool_version()},
                            {"command", "run"},
                            {"config", to_json(cfg)},
                            {"seeds", seeds},
                            {"inputs", inputs},
                            {"outputs", outputs}};
        write_text(out / "manifest.json", manifest.dump(2) + "\n");

        std::map<std::string, std::vector<pipeline::PreparedBatch>> prepared;
        for (std::size_t di = 0; di < cfg.datasets.size(); ++di) {
            const auto &entry = cfg.datasets[di];
            const auto splits = data::stratified_batches(
                datasets[di].labels, cfg.batches, cfg.test_fraction, entry.balance.value_or(cfg.balance),
                pipeline::BatchSeeds::make(cfg.seed, 0).split);
            std::ostringstream os;
            data::write_batch_manifest(splits, pipeline::BatchSeeds::make(cfg.seed, 0).split, os);
            write_text(out / "datasets" / entry.name / "batches.json", os.str());
            if (entry.synthetic) {
                const json meta{{"informative", datasets[di].informative},
                                {"feature_names", datasets[di].feature_names}};
                write_text(out / "datasets" / entry.name / "metadata.json", meta.dump(1) + "\n");
            }
            pipeline::ExperimentConfig base;
            base.seed = cfg.seed;
            base.rescale_lo = cfg.rescale_lo;
            base.rescale_hi = cfg.rescale_hi;
            auto &list = prepared[entry.name];
            for (std::size_t b = 0; b < splits.size(); ++b) {
                list.push_back(
                    pipeline::prepare_batch(datasets[di], splits[b], static_cast<int>(b), base));
            }
        }

        std::ostringstream summary;
        summary << "dataset,feature_map,n_qubits,manipulation,batches,nfo_mean,nfo_std,"
                   "qfeo_mean,qfeo_std,mean_pct,std_pct\n";
        for (const auto &c : combos) {
            const auto started = std::chrono::steady_clock::now();
            const auto &batches = prepared.at(c.dataset->name);
            const auto &names =
                datasets[static_cast<std::size_t>(c.dataset - cfg.datasets.data())].feature_names;
            pipeline::QfeoResult result;
            try {
                result = pipeline::run_qfeo(batches, c.experiment);
            } catch (const Error &e) {
                throw Error(c.dir + ": " + e.what());
            }
            const fs::path dir = out / "runs" / c.dir;
            const auto importance =
                pipeline::feature_importance(result, c.experiment.manipulation, names.size());

            json batch_json = json::array();
            for (const auto &b : result.batches) {
                {
                    auto csv = open_out(dir / ("trace_b" + std::to_string(b.index) + ".csv"));
                    bo::write_trace_csv(b.trace, csv);
                    auto js = open_out(dir / ("trace_b" + std::to_string(b.index) + ".json"));
                    bo::write_trace_json(b.trace, js);
                }
                batch_json.push_back({{"index", b.index},
                                      {"nfo_cv", jnum(b.nfo_cv)},
                                      {"nfo_test_auc", jnum(b.nfo_test_auc)},
                                      {"nfo_chosen", point_json(b.nfo_chosen)},
                                      {"qfeo_cv", jnum(b.qfeo_cv)},
                                      {"qfeo_test_auc", jnum(b.qfeo_test_auc)},
                                      {"qfeo_chosen", point_json(b.qfeo_chosen)},
                                      {"percent_change", jnum(b.percent_change())},
                                      {"best_weights", b.best_weights},
                                      {"source_indices", b.source_indices}});
            }
            if (cfg.baseline_draws > 0) {
                auto csv = open_out(dir / "baseline.csv");
                csv << "batch,draws,baseline_mean,qfeo_test_auc,nfo_test_auc\n";
                for (std::size_t b = 0; b < batches.size(); ++b) {
                    const auto aucs =
                        pipeline::random_weight_baseline(batches[b], c.experiment, cfg.baseline_draws);
                    const double mean = learn::mean(aucs);
                    csv << b << ',' << cfg.baseline_draws << ',' << num(mean) << ','
                        << num(result.batches[b].qfeo_test_auc) << ','
                        << num(result.batches[b].nfo_test_auc) << '\n';
                    batch_json[b]["baseline_test_aucs"] = aucs;
                }
            }
            write_importance(importance, names, dir);
            const auto &a = result.aggregate;
            const json result_json{
                {"dataset", c.dataset->name},
                {"feature_map", c.feature_map->label()},
                {"n_qubits", c.n_qubits},
                {"manipulation", manip::to_string(c.experiment.manipulation.kind)},
                {"r", c.experiment.manipulation.r},
                {"feature_names", names},
                {"aggregate",
                 {{"nfo_mean", jnum(a.nfo_mean)},
                  {"nfo_std", jnum(a.nfo_std)},
                  {"qfeo_mean", jnum(a.qfeo_mean)},
                  {"qfeo_std", jnum(a.qfeo_std)},
                  {"percent_change", jnum(a.percent_change)},
                  {"percent_std", jnum(a.percent_std)}}},
                {"batches", batch_json},
                {"importance", importance_json(importance)}};
            write_text(dir / "result.json", result_json.dump(1) + "\n");

            summary << c.dataset->name << ',' << c.feature_map->label() << ',' << c.n_qubits << ','
                    << manip::to_string(c.experiment.manipulation.kind) << ','
                    << result.batches.size() << ',' << num(a.nfo_mean) << ',' << num(a.nfo_std)
                    << ',' << num(a.qfeo_mean) << ',' << num(a.qfeo_std) << ','
                    << num(a.percent_change) << ',' << num(a.percent_std) << '\n';
            const std::chrono::duration<double> took = std::chrono::steady_clock::now() - started;
            log::info(c.dir, ": ", a.percent_change, "% vs NFO (", took.count(), " s)");
        }
        write_text(out / "summary.csv", summary.str());
    } catch (const std::exception &e) {
        return report_error("run failed", e, kExitRuntime);
    }
    return kExitOk;
}

int cmd_expressibility(const std::string &config_path, const std::string &out_dir,
                       const RunOptions &options) {
    ExpressibilityConfig cfg;
    try {
        cfg = load_expressibility_config(config_path);
        if (options.seed) {
            cfg.study.seed = *options.seed;
        }
        if (options.preset) {
            const auto names = fmap::preset_names();
            if (std::find(names.begin(), names.end(), *options.preset) == names.end()) {
                throw ConfigError("--preset: unknown feature-map preset '" + *options.preset + "'");
            }
            cfg.feature_map = FeatureMapEntry{*options.preset, json::object()};
            cfg.resolved().validate();
        }
    } catch (const std::exception &e) {
        return report_error("config error", e, kExitConfig);
    }
    const fs::path out(out_dir);
    try {
        const json manifest{
            {"manifest_version", 1},
            {"tool", "qfeo"},
            {"version", tool_version()},
            {"command", "expressibility"},
            {"config", to_json(cfg)},
            {"seeds", {{"study", cfg.study.seed}}},
            {"inputs",
             json::array({{{"role", "config"},
                           {"path", fs::absolute(config_path).lexically_normal().string()},
                           {"sha256", sha256_file(config_path)}}})},
            {"outputs", json::array({"reconstruction_error.csv", "components.csv"})}};
        write_text(out / "manifest.json", manifest.dump(2) + "\n");

        const auto result = expr::expressibility_study(cfg.resolved());
        {
            auto f = open_out(out / "reconstruction_error.csv");
            expr::write_error_csv(result, f);
        }
        {
            auto f = open_out(out / "components.csv");
            expr::write_components_csv(result, f);
        }
        for (const auto &kc : result.curves) {
            expr::StudyResult one{{kc}};
            const std::string k = manip::to_string(kc.kind);
            auto e = open_out(out / ("reconstruction_error_" + k + ".csv"));
            expr::write_error_csv(one, e);
            auto c = open_out(out / ("components_" + k + ".csv"));
            expr::write_components_csv(one, c);
        }
    } catch (const std::exception &e) {
        return report_error("expressibility failed", e, kExitRuntime);
    }
    return kExitOk;
}

ReportCell collapse_rows(const std::vector<ReportRow> &rows) {
    ReportCell cell;
    if (rows.empty()) {
        return cell;
    }
    std::vector<double> means;
    for (const auto &r : rows) {
        means.push_back(r.mean_pct);
    }
    cell.mean_pct = learn::mean(means);
    cell.std_pct = rows.size() == 1 ? rows.front().std_pct : pipeline::sample_std(means);
    return cell;
}

ReportCell overall_average(const std::vector<ReportCell> &cells) {
    std::vector<double> means;
    for (const auto &c : cells) {
        means.push_back(c.mean_pct);
    }
    return {learn::mean(means), pipeline::sample_std(means)};
}

int cmd_report(const std::string &results_dir) {
    const fs::path root(results_dir);
    std::vector<json> results;
    try {
        if (!fs::is_directory(root / "runs")) {
            throw ConfigError(results_dir + ": no runs/ directory (run 'qfeo run' first)");
        }
        std::vector<fs::path> files;
        for (const auto &entry : fs::directory_iterator(root / "runs")) {
            const auto f = entry.path() / "result.json";
            if (entry.is_directory() && fs::is_regular_file(f)) {
                files.push_back(f);
            }
        }
        std::sort(files.begin(), files.end());
        if (files.empty()) {
            throw ConfigError(results_dir + ": no runs/*/result.json files");
        }
        for (const auto &f : files) {
            results.push_back(read_json_file(f.string()));
        }
    } catch (const std::exception &e) {
        return report_error("report input error", e, kExitConfig);
    }

    try {
        // (feature map) -> (dataset) -> (manipulation) -> qubit rows
        std::map<std::string, std::map<std::string, std::map<std::string, std::vector<ReportRow>>>>
            grouped;
        std::map<std::string, std::vector<std::string>> manip_order;
        std::vector<ReportRow> all_rows;
        for (const auto &r : results) {
            ReportRow row{r.at("dataset").get<std::string>(),
                          r.at("feature_map").get<std::string>(),
                          r.at("n_qubits").get<int>(),
                          r.at("manipulation").get<std::string>(),
                          r.at("aggregate").at("percent_change").is_number()
                              ? r.at("aggregate").at("percent_change").get<double>()
                              : std::nan(""),
                          r.at("aggregate").at("percent_std").is_number()
                              ? r.at("aggregate").at("percent_std").get<double>()
                              : std::nan("")};
            all_rows.push_back(row);
            if (row.manipulation == "NFO") {
                continue;
            }
            auto &order = manip_order[row.feature_map];
            if (std::find(order.begin(), order.end(), row.manipulation) == order.end()) {
                order.push_back(row.manipulation);
            }
            grouped[row.feature_map][row.dataset][row.manipulation].push_back(row);
        }
        static const std::vector<std::string> canonical{"FS", "FO", "FW", "FSO", "FWO", "FWOW"};
        for (auto &[fm, order] : manip_order) {
            std::sort(order.begin(), order.end(), [](const std::string &a, const std::string &b) {
                return std::find(canonical.begin(), canonical.end(), a) <
                       std::find(canonical.begin(), canonical.end(), b);
            });
        }

        const fs::path out = root / "report";
        for (const auto &[fm, by_dataset] : grouped) {
            const auto &order = manip_order[fm];
            auto csv = open_out(out / ("percent_change_" + fm + ".csv"));
            csv << "dataset";
            for (const auto &m : order) {
                csv << ',' << m << "_mean_pct," << m << "_std_pct";
            }
            csv << '\n';
            std::map<std::string, std::vector<ReportCell>> per_manip;
            for (const auto &[ds, by_manip] : by_dataset) {
                csv << ds;
                for (const auto &m : order) {
                    const auto it = by_manip.find(m);
                    if (it == by_manip.end()) {
                        csv << ",,";
                        continue;
                    }
                    const auto cell = collapse_rows(it->second);
                    per_manip[m].push_back(cell);
                    csv << ',' << num(cell.mean_pct) << ',' << num(cell.std_pct);
                }
                csv << '\n';
            }
            csv << "Overall Average";
            for (const auto &m : order) {
                const auto cell = overall_average(per_manip[m]);
                csv << ',' << num(cell.mean_pct) << ',' << num(cell.std_pct);
            }
            csv << '\n';
        }

        {
            auto csv = open_out(out / "qubit_rows.csv");
            csv << "dataset,feature_map,n_qubits,manipulation,mean_pct,std_pct\n";
            for (const auto &r : all_rows) {
                csv << r.dataset << ',' << r.feature_map << ',' << r.n_qubits << ','
                    << r.manipulation << ',' << num(r.mean_pct) << ',' << num(r.std_pct) << '\n';
            }
        }

        // Heat-map data: feature x manipulation, averaged over qubit counts.
        struct Heat {
            std::vector<std::string> features;
            std::map<std::string, std::vector<std::vector<double>>> value; // manip -> rows
            std::map<std::string, std::vector<std::vector<double>>> rank;
        };
        std::map<std::string, Heat> heat;
        for (const auto &r : results) {
            const std::string m = r.at("manipulation").get<std::string>();
            const auto &tables = r.at("importance").at("tables");
            if (tables.empty()) {
                continue;
            }
            const std::string key = r.at("dataset").get<std::string>() + "__" +
                                    r.at("feature_map").get<std::string>();
            auto &h = heat[key];
            h.features = r.at("feature_names").get<std::vector<std::string>>();
            const auto &primary = tables.at(0);
            const auto &cols = primary.at("columns");
            int rank_col = -1;
            const json *rank_table = &primary;
            for (const auto &t : tables) {
                const auto &c = t.at("columns");
                for (std::size_t i = 0; i < c.size(); ++i) {
                    if (c[i] == "mean_rank") {
                        rank_col = static_cast<int>(i);
                        rank_table = &t;
                    }
                }
            }
            std::vector<double> v;
            std::vector<double> rk;
            for (std::size_t f = 0; f < h.features.size(); ++f) {
                const auto &cell = primary.at("rows").at(f).at(0);
                v.push_back(cell.is_number() ? cell.get<double>() : std::nan(""));
                if (rank_col >= 0) {
                    const auto &rc = rank_table->at("rows").at(f).at(rank_col);
                    rk.push_back(rc.is_number() ? rc.get<double>() : std::nan(""));
                }
            }
            (void)cols;
            h.value[m].push_back(v);
            if (rank_col >= 0) {
                h.rank[m].push_back(rk);
            }
        }
        auto average = [](const std::vector<std::vector<double>> &runs, std::size_t f) {
            double sum = 0.0;
            int count = 0;
            for (const auto &run : runs) {
                if (!std::isnan(run[f])) {
                    sum += run[f];
                    ++count;
                }
            }
            return count > 0 ? sum / count : std::nan("");
        };
        for (const auto &[key, h] : heat) {
            auto csv = open_out(out / ("importance_" + key + ".csv"));
            csv << "feature";
            for (const auto &[m, runs] : h.value) {
                csv << ',' << m;
                if (h.rank.count(m)) {
                    csv << ',' << m << "_rank";
                }
            }
            csv << '\n';
            for (std::size_t f = 0; f < h.features.size(); ++f) {
                csv << h.features[f];
                for (const auto &[m, runs] : h.value) {
                    csv << ',' << num(average(runs, f));
                    if (h.rank.count(m)) {
                        csv << ',' << num(average(h.rank.at(m), f));
                    }
                }
                csv << '\n';
            }
        }
    } catch (const std::exception &e) {
        return report_error("report failed", e, kExitRuntime);
    }
    return kExitOk;
}

int cmd_synth(const std::string &out_path, const SyntheticSpec &spec) {
    data::Dataset ds;
    try {
        ds = data::synthetic_planted(spec.d, spec.p, spec.k, spec.noise_sd, spec.seed);
    } catch (const std::exception &e) {
        return report_error("synth parameter error", e, kExitConfig);
    }
    try {
        const fs::path path(out_path);
        if (path.has_parent_path()) {
            fs::create_directories(path.parent_path());
        }
        data::write_csv(ds, out_path);
        const json meta{{"d", spec.d},
                        {"p", spec.p},
                        {"k", spec.k},
                        {"noise_sd", spec.noise_sd},
                        {"seed", spec.seed},
                        {"informative", ds.informative}};
        write_text(out_path + ".meta.json", meta.dump(1) + "\n");
    } catch (const std::exception &e) {
        return report_error("synth failed", e, kExitRuntime);
    }
    return kExitOk;
}

} // namespace qfeo::cli
