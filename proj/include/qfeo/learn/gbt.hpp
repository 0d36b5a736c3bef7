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
#include <vector>

namespace qfeo::learn {

struct GbtParams {
    int max_depth{3};
    int n_estimators{100};
    double learning_rate{0.1};
    double subsample{1.0};
    double colsample_bytree{1.0};
    double gamma_split{0.0}; ///< minimum loss reduction to split
    double lambda{1.0};      ///< L2 penalty on leaf weights
    double min_child_weight{1.0};
    std::uint64_t seed{0};

    void validate() const;
};

/// Gradient-boosted regression trees on the logistic loss with exact greedy
/// splits. Predictions are raw margins.
class GbtModel {
  public:
    struct Node {
        int feature{-1}; ///< -1 marks a leaf
        double threshold{0.0};
        int left{-1};
        int right{-1};
        double value{0.0};
    };
    using Tree = std::vector<Node>;

    std::vector<double> decision(const RowMatrix &x) const;
    double decision(const double *row) const;

    const std::vector<Tree> &trees() const { return trees_; }
    Eigen::Index n_features() const { return n_features_; }

  private:
    friend GbtModel train_gbt(const RowMatrix &, const Labels &, const GbtParams &);

    std::vector<Tree> trees_;
    Eigen::Index n_features_{0};
};

GbtModel train_gbt(const RowMatrix &x, const Labels &y, const GbtParams &params);

} // namespace qfeo::learn
