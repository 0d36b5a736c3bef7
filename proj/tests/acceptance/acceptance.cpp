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
#include "qfeo/bayesopt.hpp"
#include "qfeo/cli/commands.hpp"
#include "qfeo/cli/config.hpp"
#include "qfeo/featuremaps.hpp"
#include "qfeo/learn/auc.hpp"
#include "qfeo/log.hpp"
#include "qfeo/parallel.hpp"
#include "qfeo/pqfm.hpp"
#include "qfeo/rng.hpp"
#include "qfeo/statevec.hpp"
#include "support/oracles.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace qfeo;

namespace {

struct Outcome {
    bool pass{false};
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

const fs::path kSource = QFEO_SOURCE_DIR;

fs::path work_dir() {
    static const fs::path dir = [] {
        const fs::path d = fs::temp_directory_path() / "qfeo_acceptance";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path &path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::map<std::string, std::string> csv_files(const fs::path &root) {
    std::map<std::string, std::string> out;
    for (const auto &e : fs::recursive_directory_iterator(root)) {
        if (e.is_regular_file() && e.path().extension() == ".csv") {
            out[fs::relative(e.path(), root).string()] = slurp(e.path());
        }
    }
    return out;
}

std::vector<std::vector<std::string>> read_csv(const fs::path &path) {
    std::istringstream in(slurp(path));
    std::vector<std::vector<std::string>> rows;
    for (std::string line; std::getline(in, line);) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        for (std::string cell; std::getline(ls, cell, ',');) {
            cells.push_back(cell);
        }
        rows.push_back(cells);
    }
    return rows;
}

Outcome simulator_oracle() {
    Rng rng(20260101);
    double worst = 0.0;
    const auto t0 = Clock::now();
    for (int i = 0; i < 200; ++i) {
        const int n = 1 + static_cast<int>(rng.below(3));
        const auto c = oracle::random_circuit(rng, n, 20);
        const auto s = sim::run_circuit(c);
        const auto ref = oracle::dense_run(c);
        for (std::size_t k = 0; k < s.size(); ++k) {
            worst = std::max(worst, std::abs(s[k] - ref(static_cast<Eigen::Index>(k))));
        }
    }
    const double took = seconds_since(t0);
    std::ostringstream d;
    d << "max amplitude error " << worst << ", " << took << " s";
    return {worst < 1e-10 && took < 5.0, d.str()};
}

Outcome analytic_expectations() {
    Rng rng(7);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const double theta = rng.uniform(-2.0 * M_PI, 2.0 * M_PI);
        sim::Circuit c(1);
        c.add(sim::Gate::ry(0, theta));
        const auto b = sim::bloch_vector(sim::run_circuit(c), 0);
        worst = std::max({worst, std::abs(b[0] - std::sin(theta)), std::abs(b[1]),
                          std::abs(b[2] - std::cos(theta))});
    }
    std::ostringstream d;
    d << "max deviation " << worst;
    return {worst <= 1e-12, d.str()};
}

Outcome pqfm_contract() {
    Rng rng(11);
    const int d = 50;
    const int p = 8;
    RowMatrix x(d, p);
    Labels y(d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < p; ++j) {
            x(i, j) = rng.uniform(0.3, 2.8);
        }
        y[static_cast<std::size_t>(i)] = i % 2;
    }
    std::ostringstream detail;
    bool ok = true;
    for (const auto &name : fmap::preset_names()) {
        const auto out = pqfm::project(x, y, fmap::preset(name, 4), {manip::Kind::NFO, 0}, {});
        const bool shape = out.features.rows() == d && out.features.cols() == 12;
        const bool range = out.features.maxCoeff() <= 1.0 && out.features.minCoeff() >= -1.0;
        if (!shape || !range) {
            ok = false;
            detail << name << " violates the contract; ";
        }
    }
    detail << fmap::preset_names().size() << " presets checked";
    return {ok, detail.str()};
}

Outcome auc_oracle() {
    Rng rng(3);
    int agree = 0;
    int ties = 0;
    for (int i = 0; i < 500; ++i) {
        const std::size_t n = 2 + rng.below(80);
        std::vector<double> s(n);
        Labels y(n);
        for (std::size_t k = 0; k < n; ++k) {
            s[k] = static_cast<double>(rng.below(10)) / 10.0;
            y[k] = static_cast<int>(rng.below(2));
        }
        y[0] = 0;
        y[1] = 1;
        std::set<double> distinct(s.begin(), s.end());
        ties += distinct.size() < n ? 1 : 0;
        agree += learn::auc(s, y) == oracle::brute_auc(s, y) ? 1 : 0;
    }
    std::ostringstream d;
    d << agree << "/500 exact, " << ties << " instances with ties";
    return {agree == 500 && ties > 0, d.str()};
}

Outcome bo_benchmark() {
    int hits = 0;
    bool monotone = true;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        bo::OptimizeOptions opts;
        opts.iterations = 30;
        opts.n_init = 10;
        opts.seed = seed;
        const auto trace = bo::optimize(
            [](std::span<const double> w) { return -(w[0] - 0.7) * (w[0] - 0.7); }, 1, opts);
        hits += std::abs(trace.best_weights[0] - 0.7) < 0.05 ? 1 : 0;
        for (std::size_t i = 1; i < trace.entries.size(); ++i) {
            monotone = monotone && trace.entries[i].best_so_far >= trace.entries[i - 1].best_so_far;
        }
    }
    std::ostringstream d;
    d << hits << "/10 seeds within 0.05, monotone=" << (monotone ? "yes" : "no");
    return {hits >= 9 && monotone, d.str()};
}

Outcome qfeo_desk() {
    set_worker_count(1);
    const auto out = work_dir() / "desk_w1";
    const auto t0 = Clock::now();
    const int code = cli::cmd_run((kSource / "configs/desk_fs.json").string(), out.string());
    const double took = seconds_since(t0);
    if (code != cli::kExitOk) {
        return {false, "run exited with " + std::to_string(code)};
    }
    const auto rows = read_csv(out / "runs/planted__se-1__q4__FS/baseline.csv");
    int wins = 0;
    int batches = 0;
    std::ostringstream d;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double baseline = std::stod(rows[i][2]);
        const double qfeo = std::stod(rows[i][3]);
        wins += qfeo > baseline ? 1 : 0;
        ++batches;
    }
    d << wins << "/" << batches << " batches beat the random-weight baseline, " << took << " s";
    return {batches == 5 && wins >= 4 && took < 600.0, d.str()};
}

Outcome expressibility() {
    set_worker_count(1);
    const auto out = work_dir() / "expr_w1";
    const auto t0 = Clock::now();
    const int code = cli::cmd_expressibility(
        (kSource / "configs/expressibility_hh4.json").string(), out.string());
    const double took = seconds_since(t0);
    if (code != cli::kExitOk) {
        return {false, "expressibility exited with " + std::to_string(code)};
    }
    std::map<std::string, double> e2;
    std::map<std::string, double> c95;
    for (const auto &r : read_csv(out / "reconstruction_error.csv")) {
        if (r.size() == 4 && r[1] == "2") {
            e2[r[0]] = std::stod(r[2]);
        }
    }
    for (const auto &r : read_csv(out / "components.csv")) {
        if (r.size() == 4 && r[1] == "0.95") {
            c95[r[0]] = std::stod(r[2]);
        }
    }
    if (!e2.count("FO") || !e2.count("FW") || !c95.count("FO") || !c95.count("FW")) {
        return {false, "missing FO/FW rows in the curve tables"};
    }
    std::ostringstream d;
    d << "E_2 FO " << e2["FO"] << " vs FW " << e2["FW"] << "; components@95% FO " << c95["FO"]
      << " vs FW " << c95["FW"] << "; " << took << " s";
    return {e2["FO"] > e2["FW"] && c95["FO"] >= c95["FW"] && took < 120.0, d.str()};
}

Outcome full_scale_config() {
    const auto path = kSource / "configs/full_scale.json";
    if (!fs::exists(path)) {
        return {false, "configs/full_scale.json is missing"};
    }
    json doc = cli::read_json_file(path.string());
    // The four datasets are external; stand in synthetic data of the same width.
    const std::map<std::string, int> width{
        {"churn", 97}, {"virtual_screening", 47}, {"german", 24}, {"plasticc", 67}};
    std::map<std::string, int> p_of;
    for (auto &d : doc.at("datasets")) {
        const std::string family = d.value("family", "");
        if (!width.count(family)) {
            return {false, "dataset without a known family: " + d.at("name").get<std::string>()};
        }
        d.erase("csv");
        d["synthetic"] = {{"d", 200}, {"p", width.at(family)}, {"k", 4}};
        p_of[d.at("name").get<std::string>()] = width.at(family);
    }
    try {
        const auto cfg = cli::parse_run_config(doc, path.parent_path().string());
        std::set<int> qubits(cfg.qubits.begin(), cfg.qubits.end());
        const bool sweep = qubits == std::set<int>{9, 10, 11, 12, 13, 14, 15};
        const bool budget = cfg.bo_iterations == 100 && cfg.batches == 10 &&
                            cfg.grid_folds == 5 && cfg.score_folds == 10 &&
                            std::abs(cfg.test_fraction - 0.33) < 1e-12;
        const bool grid = cfg.grid.size() == 195 || cfg.grid.size() == 144;
        const bool scope = cfg.datasets.size() == 4 && cfg.manipulations.size() == 7;
        int combos = 0;
        for (const auto &ds : cfg.datasets) {
            for (const auto &fm : cfg.feature_maps) {
                for (int n : cfg.qubits) {
                    for (const auto &m : cfg.manipulations) {
                        const auto p = static_cast<std::size_t>(p_of.at(ds.name));
                        cli::make_experiment(cfg, fm, n, m, ds, p).validate(p);
                        ++combos;
                    }
                }
            }
        }
        std::ostringstream d;
        d << combos << " experiment cells validated; grid " << cfg.grid.size() << " points";
        return {sweep && budget && grid && scope, d.str()};
    } catch (const std::exception &e) {
        return {false, e.what()};
    }
}

Outcome determinism() {
    // Replays the manifests of the runs above with eight workers.
    const auto w1 = work_dir() / "desk_w1";
    const auto e1 = work_dir() / "expr_w1";
    if (!fs::exists(w1 / "manifest.json") || !fs::exists(e1 / "manifest.json")) {
        return {false, "reference runs are missing"};
    }
    set_worker_count(8);
    const auto w8 = work_dir() / "desk_w8";
    const auto e8 = work_dir() / "expr_w8";
    const int a = cli::cmd_run((w1 / "manifest.json").string(), w8.string());
    const int b = cli::cmd_expressibility((e1 / "manifest.json").string(), e8.string());
    set_worker_count(1);
    if (a != cli::kExitOk || b != cli::kExitOk) {
        return {false, "replay failed"};
    }
    const auto ra = csv_files(w1);
    const auto rb = csv_files(w8);
    const auto xa = csv_files(e1);
    const auto xb = csv_files(e8);
    std::ostringstream d;
    d << ra.size() + xa.size() << " CSV files compared";
    return {ra == rb && xa == xb && !ra.empty() && !xa.empty(), d.str()};
}

} // namespace

int main() {
    log::set_level(log::Level::Warn);
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"simulator oracle equivalence", simulator_oracle},
        {"analytic expectations", analytic_expectations},
        {"pqfm contract", pqfm_contract},
        {"auc oracle", auc_oracle},
        {"bo benchmark", bo_benchmark},
        {"qfeo end-to-end at desk scale", qfeo_desk},
        {"expressibility ordering", expressibility},
        {"full-scale config shipped", full_scale_config},
        {"determinism across worker counts", determinism},
    };
    int failed = 0;
    for (const auto &[name, check] : criteria) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += o.pass ? 0 : 1;
        std::cout << (o.pass ? "PASS" : "FAIL") << "  " << name << "  (" << o.detail << ")"
                  << std::endl;
    }
    std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size()
              << " acceptance criteria passed" << std::endl;
    return failed == 0 ? 0 : 1;
}
