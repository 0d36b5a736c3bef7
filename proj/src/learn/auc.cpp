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
#include "qfeo/learn/auc.hpp"

#include "qfeo/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

namespace qfeo::learn {

double auc(std::span<const double> scores, std::span<const int> labels) {
    if (scores.size() != labels.size()) {
        throw ShapeError("auc: scores and labels differ in length");
    }
    std::uint64_t pos = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] != 0 && labels[i] != 1) {
            throw MetricError("auc: labels must be 0 or 1");
        }
        if (std::isnan(scores[i])) {
            throw MetricError("auc: NaN score at index " + std::to_string(i));
        }
        pos += static_cast<std::uint64_t>(labels[i]);
    }
    const std::uint64_t neg = labels.size() - pos;
    if (pos == 0 || neg == 0) {
        throw MetricError("auc: both classes must be present (positives=" + std::to_string(pos) +
                          ", negatives=" + std::to_string(neg) + ")");
    }

    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&scores](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    // Twice the Mann-Whitney U, kept integral so the result is exact.
    std::uint64_t twice_u = 0;
    std::uint64_t neg_below = 0;
    for (std::size_t g = 0; g < order.size();) {
        std::size_t end = g;
        std::uint64_t gp = 0;
        std::uint64_t gn = 0;
        while (end < order.size() && scores[order[end]] == scores[order[g]]) {
            (labels[order[end]] == 1 ? gp : gn) += 1;
            ++end;
        }
        twice_u += 2 * gp * neg_below + gp * gn;
        neg_below += gn;
        g = end;
    }
    return static_cast<double>(twice_u) / (2.0 * static_cast<double>(pos * neg));
}

} // namespace qfeo::learn
