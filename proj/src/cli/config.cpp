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
#include "qfeo/cli/config.hpp"

#include "qfeo/errors.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <initializer_list>

namespace qfeo::cli {

namespace fs = std::filesystem;

namespace {

[[noreturn]] void fail(const std::string &path, const std::string &message) {
    throw ConfigError(path + ": " + message);
}

std::string key_path(const std::string &path, const std::string &key) { return path + "." + key; }

std::string index_path(const std::string &path, std::size_t i) {
    return path + "[" + std::to_string(i) + "]";
}

const json &require_object(const json &j, const std::string &path) {
    if (!j.is_object()) {
        fail(path, "expected an object");
    }
    return j;
}

void check_keys(const json &obj, const std::string &path,
                std::initializer_list<const char *> allowed) {
    for (const auto &item : obj.items()) {
        const bool known = std::any_of(allowed.begin(), allowed.end(),
                                       [&](const char *k) { return item.key() == k; });
        if (!known) {
            fail(key_path(path, item.key()), "unknown field");
        }
    }
}

long long get_int(const json &obj, const char *key, const std::string &path, long long def) {
    if (!obj.contains(key)) {
        return def;
    }
    const json &v = obj.at(key);
    if (!v.is_number_integer()) {
        fail(key_path(path, key), "expected an integer");
    }
    return v.get<long long>();
}

std::uint64_t get_seed(const json &obj, const char *key, const std::string &path,
                       std::uint64_t def) {
    if (!obj.contains(key)) {
        return def;
    }
    const json &v = obj.at(key);
    if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() &&
                                   v.get<long long>() < 0)) {
        fail(key_path(path, key), "expected a non-negative integer");
    }
    return v.get<std::uint64_t>();
}

double get_double(const json &obj, const char *key, const std::string &path, double def) {
    if (!obj.contains(key)) {
        return def;
    }
    const json &v = obj.at(key);
    if (!v.is_number()) {
        fail(key_path(path, key), "expected a number");
    }
    return v.get<double>();
}

bool get_bool(const json &obj, const char *key, const std::string &path, bool def) {
    if (!obj.contains(key)) {
        return def;
    }
    const json &v = obj.at(key);
    if (!v.is_boolean()) {
        fail(key_path(path, key), "expected true or false");
    }
    return v.get<bool>();
}

std::string get_string(const json &obj, const char *key, const std::string &path,
                       const std::string &def) {
    if (!obj.contains(key)) {
        return def;
    }
    const json &v = obj.at(key);
    if (!v.is_string()) {
        fail(key_path(path, key), "expected a string");
    }
    return v.get<std::string>();
}

const json &get_array(const json &obj, const char *key, const std::string &path) {
    if (!obj.contains(key)) {
        fail(key_path(path, key), "required field is missing");
    }
    const json &v = obj.at(key);
    if (!v.is_array() || v.empty()) {
        fail(key_path(path, key), "expected a non-empty array");
    }
    return v;
}

int positive(long long v, const std::string &path) {
    if (v < 1 || v > 1'000'000'000) {
        fail(path, "expected a positive integer");
    }
    return static_cast<int>(v);
}

FeatureMapEntry parse_feature_map(const json &j, const std::string &path) {
    FeatureMapEntry e;
    if (j.is_string()) {
        e.preset = j.get<std::string>();
    } else {
        require_object(j, path);
        check_keys(j, path,
                   {"preset", "alpha", "blocks", "density", "entanglement", "paulis", "reload",
                    "reload_alpha_factor", "u3_seed"});
        e.preset = get_string(j, "preset", path, "");
        e.overrides = j;
        e.overrides.erase("preset");
    }
    const auto names = fmap::preset_names();
    if (std::find(names.begin(), names.end(), e.preset) == names.end()) {
        fail(j.is_string() ? path : key_path(path, "preset"),
             "unknown feature-map preset '" + e.preset + "'");
    }
    // Type-check overrides by building once.
    try {
        e.make(4, 0).validate();
    } catch (const ConfigError &) {
        throw;
    } catch (const Error &err) {
        fail(path, err.what());
    } catch (const json::exception &err) {
        fail(path, err.what());
    }
    return e;
}

manip::Kind parse_kind_at(const json &j, const std::string &path) {
    if (!j.is_string()) {
        fail(path, "expected a manipulation name");
    }
    try {
        return manip::parse_kind(j.get<std::string>());
    } catch (const Error &err) {
        fail(path, err.what());
    }
}

learn::HyperparamGrid parse_inline_grid(const json &j, const std::string &path) {
    learn::HyperparamGrid grid;
    auto add_axis = [&](const std::string &name, const json &values, const std::string &p) {
        if (!values.is_array() || values.empty()) {
            fail(p, "expected a non-empty array of numbers");
        }
        learn::HyperparamGrid::Axis axis{name, {}};
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (!values[i].is_number()) {
                fail(index_path(p, i), "expected a number");
            }
            axis.values.push_back(values[i].get<double>());
        }
        grid.axes.push_back(std::move(axis));
    };
    if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i) {
            const std::string p = index_path(path, i);
            require_object(j[i], p);
            check_keys(j[i], p, {"name", "values"});
            const std::string name = get_string(j[i], "name", p, "");
            if (name.empty()) {
                fail(key_path(p, "name"), "required field is missing");
            }
            if (!j[i].contains("values")) {
                fail(key_path(p, "values"), "required field is missing");
            }
            add_axis(name, j[i].at("values"), key_path(p, "values"));
        }
    } else if (j.is_object()) {
        for (const auto &item : j.items()) {
            add_axis(item.key(), item.value(), key_path(path, item.key()));
        }
    } else {
        fail(path, "expected a preset name, an object or an array of axes");
    }
    if (grid.axes.empty()) {
        fail(path, "grid is empty");
    }
    return grid;
}

} // namespace

fmap::FeatureMapConfig FeatureMapEntry::make(int n_qubits, std::uint64_t default_u3_seed) const {
    fmap::FeatureMapConfig cfg = fmap::preset(preset, n_qubits);
    cfg.u3_seed = default_u3_seed;
    const json &o = overrides;
    const std::string path = "$.feature_map";
    cfg.alpha = get_double(o, "alpha", path, cfg.alpha);
    cfg.blocks = static_cast<int>(get_int(o, "blocks", path, cfg.blocks));
    cfg.density = static_cast<int>(get_int(o, "density", path, cfg.density));
    if (o.contains("entanglement")) {
        cfg.entanglement =
            fmap::parse_entanglement(get_string(o, "entanglement", path, "pairwise"));
    }
    if (o.contains("paulis")) {
        cfg.paulis = o.at("paulis").get<std::vector<std::string>>();
    }
    cfg.reload = get_bool(o, "reload", path, cfg.reload);
    cfg.reload_alpha_factor = get_double(o, "reload_alpha_factor", path, cfg.reload_alpha_factor);
    cfg.u3_seed = get_seed(o, "u3_seed", path, cfg.u3_seed);
    return cfg;
}

std::string FeatureMapEntry::label() const {
    if (overrides.empty()) {
        return preset;
    }
    std::string tag = preset;
    for (const auto &item : overrides.items()) {
        tag += "_" + item.key() + "-" + item.value().dump();
    }
    std::string clean;
    for (char ch : tag) {
        clean += (std::isalnum(static_cast<unsigned char>(ch)) || ch == '-' || ch == '_' ||
                  ch == '.')
                     ? ch
                     : '_';
    }
    return clean;
}

int default_selection(const std::string &family, std::size_t p) {
    int r = 0;
    if (family == "churn") {
        r = 40;
    } else if (family == "virtual_screening" || family == "plasticc") {
        r = 30;
    } else if (family == "german") {
        r = 18;
    }
    if (r == 0) {
        return 0;
    }
    return std::min(r, static_cast<int>(p) - 1);
}

RunConfig parse_run_config(const json &doc, const std::string &base_dir) {
    if (doc.is_object() && doc.contains("manifest_version") && doc.contains("config")) {
        return parse_run_config(doc.at("config"), base_dir);
    }
    const std::string root = "$";
    require_object(doc, root);
    check_keys(doc, root,
               {"name", "seed", "datasets", "feature_maps", "qubits", "manipulations",
                "classifier", "bo", "cv", "data", "rescale", "baseline"});
    RunConfig cfg;
    cfg.name = get_string(doc, "name", root, cfg.name);
    cfg.seed = get_seed(doc, "seed", root, cfg.seed);

    const json &datasets = get_array(doc, "datasets", root);
    for (std::size_t i = 0; i < datasets.size(); ++i) {
        const std::string path = index_path("$.datasets", i);
        const json &d = require_object(datasets[i], path);
        check_keys(d, path, {"name", "csv", "synthetic", "family", "balance"});
        DatasetEntry e;
        e.name = get_string(d, "name", path, "dataset" + std::to_string(i));
        e.family = get_string(d, "family", path, "");
        if (d.contains("balance")) {
            e.balance = get_bool(d, "balance", path, false);
        }
        if (d.contains("csv") == d.contains("synthetic")) {
            fail(path, "exactly one of 'csv' or 'synthetic' is required");
        }
        if (d.contains("csv")) {
            fs::path p = get_string(d, "csv", path, "");
            if (p.is_relative()) {
                p = fs::path(base_dir) / p;
            }
            e.csv = p.lexically_normal().string();
            if (!fs::is_regular_file(e.csv)) {
                fail(key_path(path, "csv"), "file not found: " + e.csv);
            }
        } else {
            const std::string sp = key_path(path, "synthetic");
            const json &s = require_object(d.at("synthetic"), sp);
            check_keys(s, sp, {"d", "p", "k", "noise_sd", "seed"});
            SyntheticSpec spec;
            spec.d = positive(get_int(s, "d", sp, spec.d), key_path(sp, "d"));
            spec.p = positive(get_int(s, "p", sp, spec.p), key_path(sp, "p"));
            spec.k = positive(get_int(s, "k", sp, spec.k), key_path(sp, "k"));
            spec.noise_sd = get_double(s, "noise_sd", sp, spec.noise_sd);
            spec.seed = get_seed(s, "seed", sp, spec.seed);
            if (spec.k > spec.p) {
                fail(key_path(sp, "k"), "must not exceed p");
            }
            if (spec.d < 4) {
                fail(key_path(sp, "d"), "must be at least 4");
            }
            e.synthetic = spec;
        }
        for (const auto &prev : cfg.datasets) {
            if (prev.name == e.name) {
                fail(key_path(path, "name"), "duplicate dataset name '" + e.name + "'");
            }
        }
        cfg.datasets.push_back(std::move(e));
    }

    const json &maps = get_array(doc, "feature_maps", root);
    for (std::size_t i = 0; i < maps.size(); ++i) {
        cfg.feature_maps.push_back(parse_feature_map(maps[i], index_path("$.feature_maps", i)));
    }

    const json &qubits = get_array(doc, "qubits", root);
    for (std::size_t i = 0; i < qubits.size(); ++i) {
        const std::string path = index_path("$.qubits", i);
        if (!qubits[i].is_number_integer()) {
            fail(path, "expected an integer");
        }
        const int n = qubits[i].get<int>();
        if (n < 1 || n > sim::kMaxQubits) {
            fail(path, "qubit count must lie in [1, " + std::to_string(sim::kMaxQubits) + "]");
        }
        for (std::size_t f = 0; f < cfg.feature_maps.size(); ++f) {
            try {
                cfg.feature_maps[f].make(n, 0).validate();
            } catch (const Error &err) {
                fail(path, "feature map " + cfg.feature_maps[f].label() + ": " + err.what());
            }
        }
        cfg.qubits.push_back(n);
    }

    const json &manips = get_array(doc, "manipulations", root);
    for (std::size_t i = 0; i < manips.size(); ++i) {
        const std::string path = index_path("$.manipulations", i);
        ManipulationEntry m;
        if (manips[i].is_string()) {
            m.kind = parse_kind_at(manips[i], path);
        } else {
            const json &o = require_object(manips[i], path);
            check_keys(o, path, {"kind", "r"});
            if (!o.contains("kind")) {
                fail(key_path(path, "kind"), "required field is missing");
            }
            m.kind = parse_kind_at(o.at("kind"), key_path(path, "kind"));
            m.r = static_cast<int>(get_int(o, "r", path, 0));
            if (m.r < 0) {
                fail(key_path(path, "r"), "must be positive");
            }
        }
        cfg.manipulations.push_back(m);
    }

    if (doc.contains("classifier")) {
        const std::string path = "$.classifier";
        const json &c = require_object(doc.at("classifier"), path);
        check_keys(c, path, {"kind", "grid"});
        const json grid = c.contains("grid") ? c.at("grid") : json("svc-reference");
        if (grid.is_string()) {
            cfg.grid_name = grid.get<std::string>();
            try {
                cfg.grid = learn::grid_preset(cfg.grid_name);
                cfg.classifier = learn::grid_preset_kind(cfg.grid_name);
            } catch (const Error &err) {
                fail(key_path(path, "grid"), err.what());
            }
            if (c.contains("kind")) {
                const auto kind = learn::parse_model_kind(get_string(c, "kind", path, ""));
                if (kind != cfg.classifier) {
                    fail(key_path(path, "kind"),
                         "does not match grid preset '" + cfg.grid_name + "'");
                }
            }
        } else {
            cfg.grid_name = "custom";
            cfg.grid = parse_inline_grid(grid, key_path(path, "grid"));
            if (!c.contains("kind")) {
                fail(key_path(path, "kind"), "required with an inline grid");
            }
            try {
                cfg.classifier = learn::parse_model_kind(get_string(c, "kind", path, ""));
                for (const auto &p : cfg.grid.points()) {
                    learn::check_point(cfg.classifier, p);
                }
            } catch (const Error &err) {
                fail(key_path(path, "grid"), err.what());
            }
        }
    } else {
        cfg.grid = learn::grid_preset(cfg.grid_name);
    }

    if (doc.contains("bo")) {
        const std::string path = "$.bo";
        const json &b = require_object(doc.at("bo"), path);
        check_keys(b, path, {"iterations", "n_init", "n_candidates"});
        cfg.bo_iterations =
            positive(get_int(b, "iterations", path, cfg.bo_iterations), key_path(path, "iterations"));
        cfg.bo_init = positive(get_int(b, "n_init", path, cfg.bo_init), key_path(path, "n_init"));
        cfg.n_candidates = positive(get_int(b, "n_candidates", path, cfg.n_candidates),
                                    key_path(path, "n_candidates"));
        if (cfg.bo_init > cfg.bo_iterations) {
            fail(key_path(path, "n_init"), "must not exceed iterations");
        }
    }
    if (doc.contains("cv")) {
        const std::string path = "$.cv";
        const json &c = require_object(doc.at("cv"), path);
        check_keys(c, path, {"grid_folds", "score_folds"});
        cfg.grid_folds = static_cast<int>(get_int(c, "grid_folds", path, cfg.grid_folds));
        cfg.score_folds = static_cast<int>(get_int(c, "score_folds", path, cfg.score_folds));
        if (cfg.grid_folds < 2) {
            fail(key_path(path, "grid_folds"), "must be at least 2");
        }
        if (cfg.score_folds < 2) {
            fail(key_path(path, "score_folds"), "must be at least 2");
        }
    }
    if (doc.contains("data")) {
        const std::string path = "$.data";
        const json &d = require_object(doc.at("data"), path);
        check_keys(d, path, {"batches", "test_fraction", "balance"});
        cfg.batches = positive(get_int(d, "batches", path, cfg.batches), key_path(path, "batches"));
        cfg.test_fraction = get_double(d, "test_fraction", path, cfg.test_fraction);
        cfg.balance = get_bool(d, "balance", path, cfg.balance);
        if (!(cfg.test_fraction > 0.0 && cfg.test_fraction < 1.0)) {
            fail(key_path(path, "test_fraction"), "must lie in (0, 1)");
        }
    }
    if (doc.contains("rescale")) {
        const std::string path = "$.rescale";
        const json &r = require_object(doc.at("rescale"), path);
        check_keys(r, path, {"lo", "hi"});
        cfg.rescale_lo = get_double(r, "lo", path, cfg.rescale_lo);
        cfg.rescale_hi = get_double(r, "hi", path, cfg.rescale_hi);
        if (!(cfg.rescale_hi > cfg.rescale_lo)) {
            fail(path, "hi must exceed lo");
        }
    }
    if (doc.contains("baseline")) {
        const std::string path = "$.baseline";
        const json &b = require_object(doc.at("baseline"), path);
        check_keys(b, path, {"random_draws"});
        cfg.baseline_draws = static_cast<int>(get_int(b, "random_draws", path, 0));
        if (cfg.baseline_draws < 0) {
            fail(key_path(path, "random_draws"), "must be non-negative");
        }
    }
    return cfg;
}

json read_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError(path + ": cannot open config file");
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error &e) {
        throw ConfigError(path + ": invalid JSON: " + e.what());
    }
}

RunConfig load_run_config(const std::string &path) {
    const fs::path base = fs::path(path).parent_path();
    return parse_run_config(read_json_file(path), base.empty() ? "." : base.string());
}

json to_json(const RunConfig &cfg) {
    json j;
    j["name"] = cfg.name;
    j["seed"] = cfg.seed;
    auto &datasets = j["datasets"] = json::array();
    for (const auto &d : cfg.datasets) {
        json e{{"name", d.name}};
        if (!d.family.empty()) {
            e["family"] = d.family;
        }
        if (d.balance) {
            e["balance"] = *d.balance;
        }
        if (d.synthetic) {
            const auto &s = *d.synthetic;
            e["synthetic"] = {{"d", s.d}, {"p", s.p}, {"k", s.k}, {"noise_sd", s.noise_sd},
                              {"seed", s.seed}};
        } else {
            e["csv"] = fs::absolute(d.csv).lexically_normal().string();
        }
        datasets.push_back(std::move(e));
    }
    auto &maps = j["feature_maps"] = json::array();
    for (const auto &f : cfg.feature_maps) {
        json e = f.overrides;
        e["preset"] = f.preset;
        maps.push_back(std::move(e));
    }
    j["qubits"] = cfg.qubits;
    auto &manips = j["manipulations"] = json::array();
    for (const auto &m : cfg.manipulations) {
        json e{{"kind", manip::to_string(m.kind)}};
        if (m.r > 0) {
            e["r"] = m.r;
        }
        manips.push_back(std::move(e));
    }
    json grid = json::array();
    for (const auto &axis : cfg.grid.axes) {
        grid.push_back({{"name", axis.name}, {"values", axis.values}});
    }
    j["classifier"] = {{"kind", learn::to_string(cfg.classifier)}, {"grid", grid}};
    j["bo"] = {{"iterations", cfg.bo_iterations},
               {"n_init", cfg.bo_init},
               {"n_candidates", cfg.n_candidates}};
    j["cv"] = {{"grid_folds", cfg.grid_folds}, {"score_folds", cfg.score_folds}};
    j["data"] = {{"batches", cfg.batches},
                 {"test_fraction", cfg.test_fraction},
                 {"balance", cfg.balance}};
    j["rescale"] = {{"lo", cfg.rescale_lo}, {"hi", cfg.rescale_hi}};
    j["baseline"] = {{"random_draws", cfg.baseline_draws}};
    return j;
}

pipeline::ExperimentConfig make_experiment(const RunConfig &cfg, const FeatureMapEntry &fm,
                                           int n_qubits, const ManipulationEntry &m,
                                           const DatasetEntry &ds, std::size_t n_features) {
    pipeline::ExperimentConfig e;
    e.feature_map = fm.make(n_qubits, cfg.seed);
    e.manipulation.kind = m.kind;
    e.manipulation.r = m.r;
    if (e.manipulation.selects() && m.r == 0) {
        e.manipulation.r = default_selection(ds.family, n_features);
        if (e.manipulation.r < 1) {
            throw ConfigError("$.manipulations: " + manip::to_string(m.kind) +
                              " needs an explicit 'r' for dataset '" + ds.name +
                              "' (no known family default)");
        }
    }
    e.classifier = cfg.classifier;
    e.grid = cfg.grid;
    e.bo_iterations = cfg.bo_iterations;
    e.bo_init = cfg.bo_init;
    e.acquisition.n_candidates = cfg.n_candidates;
    e.grid_folds = cfg.grid_folds;
    e.score_folds = cfg.score_folds;
    e.n_batches = cfg.batches;
    e.test_fraction = cfg.test_fraction;
    e.balance = ds.balance.value_or(cfg.balance);
    e.rescale_lo = cfg.rescale_lo;
    e.rescale_hi = cfg.rescale_hi;
    e.seed = cfg.seed;
    return e;
}

void apply_preset_override(RunConfig &cfg, const std::string &preset) {
    const auto maps = fmap::preset_names();
    if (std::find(maps.begin(), maps.end(), preset) != maps.end()) {
        cfg.feature_maps = {FeatureMapEntry{preset, json::object()}};
        return;
    }
    const auto grids = learn::grid_preset_names();
    if (std::find(grids.begin(), grids.end(), preset) != grids.end()) {
        cfg.grid_name = preset;
        cfg.grid = learn::grid_preset(preset);
        cfg.classifier = learn::grid_preset_kind(preset);
        return;
    }
    throw ConfigError("--preset: unknown preset '" + preset + "'");
}

expr::StudyConfig ExpressibilityConfig::resolved() const {
    expr::StudyConfig s = study;
    s.feature_map = feature_map.make(n_qubits, study.seed);
    return s;
}

ExpressibilityConfig parse_expressibility_config(const json &doc) {
    if (doc.is_object() && doc.contains("manifest_version") && doc.contains("config")) {
        return parse_expressibility_config(doc.at("config"));
    }
    const std::string root = "$";
    require_object(doc, root);
    check_keys(doc, root,
               {"name", "feature_map", "n_qubits", "kinds", "n_features", "fs_r", "T",
                "repetitions", "seed", "fractions", "rescale"});
    ExpressibilityConfig cfg;
    if (!doc.contains("feature_map")) {
        fail("$.feature_map", "required field is missing");
    }
    cfg.feature_map = parse_feature_map(doc.at("feature_map"), "$.feature_map");
    cfg.n_qubits = positive(get_int(doc, "n_qubits", root, cfg.n_qubits), "$.n_qubits");
    if (cfg.n_qubits > sim::kMaxQubits) {
        fail("$.n_qubits", "too many qubits");
    }
    auto &s = cfg.study;
    if (doc.contains("kinds")) {
        s.kinds.clear();
        const json &kinds = get_array(doc, "kinds", root);
        for (std::size_t i = 0; i < kinds.size(); ++i) {
            const std::string path = index_path("$.kinds", i);
            const auto kind = parse_kind_at(kinds[i], path);
            if (kind != manip::Kind::FO && kind != manip::Kind::FS && kind != manip::Kind::FW) {
                fail(path, "expressibility supports FO, FS and FW only");
            }
            s.kinds.push_back(kind);
        }
    }
    if (!doc.contains("n_features")) {
        fail("$.n_features", "required field is missing");
    }
    s.n_features = positive(get_int(doc, "n_features", root, 0), "$.n_features");
    s.fs_r = static_cast<int>(get_int(doc, "fs_r", root, 0));
    if (s.fs_r < 0 || s.fs_r > s.n_features) {
        fail("$.fs_r", "must lie in [0, n_features]");
    }
    s.t = positive(get_int(doc, "T", root, s.t), "$.T");
    s.repetitions = positive(get_int(doc, "repetitions", root, s.repetitions), "$.repetitions");
    s.seed = get_seed(doc, "seed", root, s.seed);
    if (doc.contains("fractions")) {
        const json &f = get_array(doc, "fractions", root);
        for (std::size_t i = 0; i < f.size(); ++i) {
            const std::string path = index_path("$.fractions", i);
            if (!f[i].is_number() || !(f[i].get<double>() > 0.0 && f[i].get<double>() <= 1.0)) {
                fail(path, "expected a number in (0, 1]");
            }
            s.fractions.push_back(f[i].get<double>());
        }
    }
    if (doc.contains("rescale")) {
        const json &r = require_object(doc.at("rescale"), "$.rescale");
        check_keys(r, "$.rescale", {"lo", "hi"});
        s.rescale_lo = get_double(r, "lo", "$.rescale", s.rescale_lo);
        s.rescale_hi = get_double(r, "hi", "$.rescale", s.rescale_hi);
        if (!(s.rescale_hi > s.rescale_lo)) {
            fail("$.rescale", "hi must exceed lo");
        }
    }
    try {
        cfg.resolved().validate();
    } catch (const Error &err) {
        fail("$", err.what());
    }
    return cfg;
}

ExpressibilityConfig load_expressibility_config(const std::string &path) {
    return parse_expressibility_config(read_json_file(path));
}

json to_json(const ExpressibilityConfig &cfg) {
    json fm = cfg.feature_map.overrides;
    fm["preset"] = cfg.feature_map.preset;
    json kinds = json::array();
    for (auto k : cfg.study.kinds) {
        kinds.push_back(manip::to_string(k));
    }
    json j{{"feature_map", fm},
           {"n_qubits", cfg.n_qubits},
           {"kinds", kinds},
           {"n_features", cfg.study.n_features},
           {"fs_r", cfg.study.fs_r},
           {"T", cfg.study.t},
           {"repetitions", cfg.study.repetitions},
           {"seed", cfg.study.seed},
           {"rescale", {{"lo", cfg.study.rescale_lo}, {"hi", cfg.study.rescale_hi}}}};
    if (!cfg.study.fractions.empty()) {
        j["fractions"] = cfg.study.fractions;
    }
    return j;
}

} // namespace qfeo::cli
