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

#include "qfeo/featuremaps.hpp"
#include "qfeo/manipulate.hpp"
#include "qfeo/rng.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace qfeo::expr {

/// T x 2^n matrix; row t is the statevector of the t-th manipulated encoding.
using StateMatrix = Eigen::MatrixXcd;

/// Supported kinds: FO (uniform permutation), FW (uniform [0,1] weights) and
/// FS (uniform r-subset, original order kept). `fs_r` <= 0 means p / 2.
StateMatrix build_state_matrix(const fmap::FeatureMap &map, manip::Kind kind,
                               std::span<const double> base_features, int t, Rng &rng,
                               int fs_r = 0);

Eigen::VectorXd singular_values(const Eigen::MatrixXcd &m);

/// Spectral norm of S minus its rank-r truncation, i.e. sigma_{r+1}.
double reconstruction_error(const StateMatrix &s, int r);

/// Smallest k whose leading squared singular values of the row-centred
/// matrix retain `fraction` of the total.
int components_for_variance(const StateMatrix &s, double fraction);

struct StudyConfig {
    fmap::FeatureMapConfig feature_map;
    std::vector<manip::Kind> kinds{manip::Kind::FO, manip::Kind::FS, manip::Kind::FW};
    int n_features{8};
    int fs_r{0};
    int t{1000};
    int repetitions{30};
    double rescale_lo{0.3};
    double rescale_hi{2.8};
    std::vector<double> fractions; ///< empty: 0.05, 0.10, ..., 1.00
    std::uint64_t seed{0};

    void validate() const;
};

struct CurvePoint {
    double x{0.0};
    double mean{0.0};
    double std{0.0};
};

struct KindCurves {
    manip::Kind kind{manip::Kind::FO};
    std::vector<CurvePoint> error;      ///< x = rank r
    std::vector<CurvePoint> components; ///< x = variance fraction
    /// Raw per-repetition values, [rep][point].
    std::vector<std::vector<double>> error_runs;
    std::vector<std::vector<double>> component_runs;
};

struct StudyResult {
    std::vector<KindCurves> curves;
};

/// Base features per repetition: standard normal, min-max rescaled to the
/// encoding interval. Every kind sees the same base draw.
std::vector<double> base_features(const StudyConfig &cfg, int repetition);

StudyResult expressibility_study(const StudyConfig &cfg);

/// CSV columns: kind,x,mean,std.
void write_error_csv(const StudyResult &result, std::ostream &out);
void write_components_csv(const StudyResult &result, std::ostream &out);

} // namespace qfeo::expr
