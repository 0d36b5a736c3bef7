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

#include "qfeo/cli/config.hpp"
#include "qfeo/pipeline.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qfeo::cli {

enum ExitCode { kExitOk = 0, kExitRuntime = 1, kExitConfig = 2 };

struct RunOptions {
    std::optional<std::uint64_t> seed;
    std::optional<std::string> preset;
};

std::string tool_version();

/// Runs every (dataset, feature map, qubits, manipulation) combination.
/// Writes manifest.json before computing, then summary.csv and one
/// directory per combination under runs/.
int cmd_run(const std::string &config_path, const std::string &out_dir,
            const RunOptions &options = {});

int cmd_expressibility(const std::string &config_path, const std::string &out_dir,
                       const RunOptions &options = {});

/// Reads runs/*/result.json under `results_dir` and writes report/.
int cmd_report(const std::string &results_dir);

int cmd_synth(const std::string &out_path, const SyntheticSpec &spec);

/// One qubit-count row of a percent-change table.
struct ReportRow {
    std::string dataset;
    std::string feature_map;
    int n_qubits{0};
    std::string manipulation;
    double mean_pct{0.0};
    double std_pct{0.0};
};

struct ReportCell {
    double mean_pct{0.0};
    double std_pct{0.0};
};

/// Collapses qubit rows of one (dataset, feature map, manipulation): mean of
/// the row means; std is the sample std of row means, or the row's own std
/// when there is a single row.
ReportCell collapse_rows(const std::vector<ReportRow> &rows);

/// Mean and sample std of per-dataset cell means.
ReportCell overall_average(const std::vector<ReportCell> &cells);

} // namespace qfeo::cli
