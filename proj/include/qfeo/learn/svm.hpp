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

#include <vector>

namespace qfeo::learn {

struct SvmOptions {
    double tolerance{1e-3};
    /// Iteration cap as a multiple of the training-set size squared.
    long long iteration_factor{10};
};

/// RBF-kernel soft-margin SVM trained by SMO with second-order working-set
/// selection. Only support vectors are retained.
class SvmModel {
  public:
    SvmModel() = default;

    std::vector<double> decision(const RowMatrix &x) const;
    double decision(const double *row) const;

    const RowMatrix &support_vectors() const { return sv_; }
    const std::vector<double> &coefficients() const { return coef_; }
    double bias() const { return -rho_; }
    double gamma() const { return gamma_; }

    /// Dual variables of every training point (0 for non-support vectors).
    const std::vector<double> &alpha() const { return alpha_; }
    /// Maximal KKT violation at termination.
    double kkt_gap() const { return kkt_gap_; }
    long long iterations() const { return iterations_; }

  private:
    friend SvmModel train_svm(const RowMatrix &, const Labels &, double, double,
                              const SvmOptions &);

    RowMatrix sv_;
    std::vector<double> coef_; // alpha_i * y_i
    std::vector<double> alpha_;
    double rho_{0.0};
    double gamma_{1.0};
    double kkt_gap_{0.0};
    long long iterations_{0};
};

/// Throws TrainingError with a single class, fewer than two samples per
/// class, or on hitting the iteration cap.
SvmModel train_svm(const RowMatrix &x, const Labels &y, double c, double gamma,
                   const SvmOptions &options = {});

double rbf_kernel(const double *a, const double *b, Eigen::Index dim, double gamma);

} // namespace qfeo::learn
