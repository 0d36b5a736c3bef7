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

#include <cstdint>
#include <vector>

namespace qfeo::learn {

struct Fold {
    std::vector<int> train;
    std::vector<int> test;
};

/// Stratified K-fold partition of the row indices. Each class is shuffled
/// with the seed and dealt round-robin, so every fold holds both classes and
/// per-fold class counts differ by at most one.
/// Throws ParameterError for K < 2 and MetricError when K exceeds the
/// minority class count (a fold would lack a class and AUC is undefined).
std::vector<Fold> stratified_kfold(const std::vector<int> &labels, int k, std::uint64_t seed);

} // namespace qfeo::learn
