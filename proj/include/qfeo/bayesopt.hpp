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
#include "qfeo/rng.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace qfeo::bo {

struct GpOptions {
    double jitter{1e-6};
    double max_jitter{1e-4};
    int lengthscale_grid{16};
    /// Grid bounds as multiples of the unit-cube diagonal sqrt(m).
    double lengthscale_lo{0.02};
    double lengthscale_hi{5.0};
    /// Search range for the signal variance (standardized units).
    double signal_variance_lo{1e-12};
    double signal_variance_hi{1e8};
};

struct Posterior {
    double mean{0.0};     ///< standardized units
    double variance{0.0}; ///< standardized units
};

/// Gaussian process with a Matern-5/2 kernel and a single length-scale.
/// Targets are standardized internally; the length-scale is picked from a
/// log grid by profiled marginal likelihood and the signal variance is the
/// closed-form maximizer for that length-scale.
class GpSurrogate {
  public:
    static GpSurrogate fit(const RowMatrix &x, std::span<const double> y,
                           const GpOptions &options = {});

    Posterior posterior(std::span<const double> x) const;
    /// Posterior mean in the original target units.
    double predict(std::span<const double> x) const;
    /// Expected improvement over the best observation (standardized units).
    double expected_improvement(std::span<const double> x) const;

    double standardize(double y) const { return (y - y_mean_) / y_scale_; }

    const RowMatrix &inputs() const { return x_; }
    const std::vector<double> &standardized_targets() const { return ys_; }
    double lengthscale() const { return lengthscale_; }
    double signal_variance() const { return signal_variance_; }
    double jitter() const { return jitter_; }
    double best_standardized() const { return best_; }
    /// Row of the best observation.
    std::size_t best_index() const { return best_index_; }
    int dimension() const { return static_cast<int>(x_.cols()); }

  private:
    double correlation(const double *a, const double *b) const;

    RowMatrix x_;
    std::vector<double> ys_;
    Eigen::VectorXd weights_; // R^-1 ys
    Eigen::LLT<Eigen::MatrixXd> chol_;
    double y_mean_{0.0};
    double y_scale_{1.0};
    double lengthscale_{1.0};
    double signal_variance_{1.0};
    double jitter_{0.0};
    double best_{0.0};
    std::size_t best_index_{0};
};

double matern52(double r, double lengthscale);

struct SuggestOptions {
    int n_candidates{1000};
    double perturb_sd{0.05};
    /// Perturbed copies of the incumbent, as a fraction of n_candidates.
    double perturb_fraction{0.1};
};

/// Maximizes expected improvement over random candidates in [0,1]^m plus
/// Gaussian perturbations of the incumbent. Exact duplicates of observed
/// inputs are never returned unless no other candidate exists.
std::vector<double> suggest(const GpSurrogate &gp, int m, Rng &rng,
                            const SuggestOptions &options = {});

struct TraceEntry {
    int iteration{0};
    std::vector<double> weights;
    double value{0.0};
    double best_so_far{0.0};
};

struct OptTrace {
    std::vector<TraceEntry> entries;
    std::vector<double> best_weights;
    double best_value{0.0};
    int best_iteration{-1};
};

struct OptimizeOptions {
    int iterations{100};
    int n_init{10};
    std::uint64_t seed{0};
    GpOptions gp;
    SuggestOptions acquisition;
};

using Objective = std::function<double(std::span<const double>)>;

/// n_init uniform draws, then fit/suggest/evaluate until the budget is
/// spent. Objective failures are recorded as -infinity and left out of the
/// surrogate.
OptTrace optimize(const Objective &objective, int m, const OptimizeOptions &options);

/// Uniform random search with the same draw sequence as the initial design.
OptTrace random_search(const Objective &objective, int m, int iterations, std::uint64_t seed);

void write_trace_csv(const OptTrace &trace, std::ostream &out);
void write_trace_json(const OptTrace &trace, std::ostream &out);

} // namespace qfeo::bo
