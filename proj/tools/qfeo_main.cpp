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
#include "qfeo/parallel.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <thread>

int main(int argc, char **argv) {
    using namespace qfeo::cli;

    CLI::App app{"Feature encoding optimization for quantum feature maps"};
    app.set_version_flag("--version", tool_version());
    app.require_subcommand(1);
    app.fallthrough();

    int workers = static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
    app.add_option("--workers", workers, "Worker threads (results do not depend on it)")
        ->check(CLI::PositiveNumber);

    std::string config;
    std::string out = "results";
    std::optional<std::uint64_t> seed;
    std::optional<std::string> preset;

    auto *run = app.add_subcommand("run", "Run the optimization experiments of a config");
    run->add_option("--config", config, "Experiment config (JSON) or a run manifest")
        ->required()
        ->check(CLI::ExistingFile);
    run->add_option("--out", out, "Output directory");
    run->add_option("--seed", seed, "Override the config seed");
    run->add_option("--preset", preset, "Replace feature maps or the classifier grid by a preset");

    auto *expr = app.add_subcommand("expressibility", "Run the statevector SVD study");
    expr->add_option("--config", config, "Study config (JSON) or a manifest")
        ->required()
        ->check(CLI::ExistingFile);
    expr->add_option("--out", out, "Output directory");
    expr->add_option("--seed", seed, "Override the config seed");
    expr->add_option("--preset", preset, "Replace the feature map by a preset");

    std::string results;
    auto *report = app.add_subcommand("report", "Aggregate a results directory into tables");
    report->add_option("--out,results", results, "Results directory of a run")->required();

    SyntheticSpec synth;
    std::string synth_out;
    auto *syn = app.add_subcommand("synth", "Write a synthetic planted-feature CSV");
    syn->add_option("--out", synth_out, "CSV path")->required();
    syn->add_option("-d,--rows", synth.d, "Samples")->capture_default_str();
    syn->add_option("-p,--features", synth.p, "Features")->capture_default_str();
    syn->add_option("-k,--informative", synth.k, "Informative features")->capture_default_str();
    syn->add_option("--noise", synth.noise_sd, "Label noise sd")->capture_default_str();
    syn->add_option("--seed", synth.seed, "Generator seed")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    qfeo::set_worker_count(workers);
    const RunOptions options{seed, preset};
    if (*run) {
        return cmd_run(config, out, options);
    }
    if (*expr) {
        return cmd_expressibility(config, out, options);
    }
    if (*report) {
        return cmd_report(results);
    }
    return cmd_synth(synth_out, synth);
}
