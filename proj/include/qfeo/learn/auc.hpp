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

#include <span>

namespace qfeo::learn {

/// Area under the ROC curve as the tie-corrected Mann-Whitney statistic,
/// P(score+ > score-) + P(score+ = score-) / 2. Labels are 0/1.
/// Throws MetricError if a class is missing or a score is NaN.
double auc(std::span<const double> scores, std::span<const int> labels);

} // namespace qfeo::learn
