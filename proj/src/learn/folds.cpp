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
#include "qfeo/learn/folds.hpp"

#include "qfeo/errors.hpp"
#include "qfeo/rng.hpp"

#include <algorithm>
#include <span>

namespace qfeo::learn {

std::vector<Fold> stratified_kfold(const std::vector<int> &labels, int k, std::uint64_t seed) {
    if (k < 2) {
        throw ParameterError("stratified_kfold: K must be at least 2");
    }
    std::vector<int> by_class[2];
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] != 0 && labels[i] != 1) {
            throw DataError("stratified_kfold: labels must be 0 or 1");
        }
        by_class[labels[i]].push_back(static_cast<int>(i));
    }
    const std::size_t minority = std::min(by_class[0].size(), by_class[1].size());
    if (static_cast<std::size_t>(k) > minority) {
        throw MetricError("stratified_kfold: K=" + std::to_string(k) +
                          " exceeds the minority class count " + std::to_string(minority) +
                          "; some fold would have a single class and no defined AUC");
    }

    Rng rng(seed);
    std::vector<int> assignment(labels.size(), 0);
    std::size_t offset = 0;
    for (auto &members : by_class) {
        rng.shuffle(std::span<int>(members));
        for (std::size_t j = 0; j < members.size(); ++j) {
            assignment[static_cast<std::size_t>(members[j])] =
                static_cast<int>((offset + j) % static_cast<std::size_t>(k));
        }
        offset += members.size();
    }

    std::vector<Fold> folds(static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < labels.size(); ++i) {
        for (int f = 0; f < k; ++f) {
            auto &fold = folds[static_cast<std::size_t>(f)];
            (assignment[i] == f ? fold.test : fold.train).push_back(static_cast<int>(i));
        }
    }
    return folds;
}

} // namespace qfeo::learn
