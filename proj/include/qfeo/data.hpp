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

#include "qfeo/matrix.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace qfeo::data {

struct Dataset {
    RowMatrix features;
    Labels labels;
    std::vector<std::string> feature_names;
    /// Planted informative columns (synthetic data only).
    std::vector<int> informative;

    std::size_t rows() const { return labels.size(); }
    std::size_t cols() const { return static_cast<std::size_t>(features.cols()); }
};

/// Header row, numeric cells, label (0/1) in the last column. Parse errors
/// name the 1-based line and column.
Dataset load_csv(const std::string &path);
Dataset parse_csv(std::istream &in, const std::string &source = "<stream>");
void write_csv(const Dataset &ds, const std::string &path);
void write_csv(const Dataset &ds, std::ostream &out);

struct Split {
    std::vector<int> train;
    std::vector<int> test;
};

/// Independent stratified train/test splits; batch b draws from
/// derive_seed(seed, b). With `balance`, the majority class is under-sampled
/// to the minority count separately within train and test.
std::vector<Split> stratified_batches(const Labels &labels, int n_batches, double test_fraction,
                                      bool balance, std::uint64_t seed);

void write_batch_manifest(const std::vector<Split> &splits, std::uint64_t seed, std::ostream &out);

Dataset synthetic_planted(int d, int p, int k_informative, double noise_sd, std::uint64_t seed);

} // namespace qfeo::data
