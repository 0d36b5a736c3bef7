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
#include "qfeo/bayesopt.hpp"

#include "qfeo/errors.hpp"
#include "qfeo/format.hpp"
#include "qfeo/log.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

namespace qfeo::bo {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double normal_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi); }

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

} // namespace

double matern52(double r, double lengthscale) {
    const double s = std::sqrt(5.0) * r / lengthscale;
    return (1.0 + s + s * s / 3.0) * std::exp(-s);
}

double GpSurrogate::correlation(const double *a, const double *b) const {
    double sq = 0.0;
    for (Eigen::Index k = 0; k < x_.cols(); ++k) {
        const double d = a[k] - b[k];
        sq += d * d;
    }
    return matern52(std::sqrt(sq), lengthscale_);
}

GpSurrogate GpSurrogate::fit(const RowMatrix &x, std::span<const double> y,
                             const GpOptions &options) {
    const auto k = static_cast<std::size_t>(x.rows());
    if (k == 0 || y.size() != k) {
        throw ShapeError("gp_fit needs k >= 1 observations with matching targets");
    }
    GpSurrogate gp;
    gp.x_ = x;

    double sum = 0.0;
    for (double v : y) {
        if (!std::isfinite(v)) {
            throw NumericError("gp_fit: non-finite target");
        }
        sum += v;
    }
    gp.y_mean_ = sum / static_cast<double>(k);
    double ss = 0.0;
    for (double v : y) {
        ss += (v - gp.y_mean_) * (v - gp.y_mean_);
    }
    const double sd = k > 1 ? std::sqrt(ss / static_cast<double>(k - 1)) : 0.0;
    gp.y_scale_ = sd > 0.0 ? sd : 1.0;
    gp.ys_.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
        gp.ys_[i] = (y[i] - gp.y_mean_) / gp.y_scale_;
        if (i == 0 || gp.ys_[i] > gp.best_) {
            gp.best_ = gp.ys_[i];
            gp.best_index_ = i;
        }
    }
    const Eigen::Map<const Eigen::VectorXd> ys(gp.ys_.data(), static_cast<Eigen::Index>(k));

    const double diag = std::sqrt(static_cast<double>(x.cols()));
    const double log_lo = std::log(options.lengthscale_lo * diag);
    const double log_hi = std::log(options.lengthscale_hi * diag);
    const int grid = std::max(options.lengthscale_grid, 1);

    // Noise-free kernel sigma2 * R plus an absolute nugget tau in standardized
    // units. For each length-scale, sigma2 maximizes the marginal likelihood,
    // evaluated through the eigendecomposition of R.
    const double tau = options.jitter;
    double best_lml = kNegInf;
    double best_ls = 0.0;
    double best_s2 = 1.0;
    Eigen::MatrixXd best_r;
    for (int g = 0; g < grid; ++g) {
        const double t = grid == 1 ? 0.5 : static_cast<double>(g) / (grid - 1);
        gp.lengthscale_ = std::exp(log_lo + t * (log_hi - log_lo));
        Eigen::MatrixXd r(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
        for (Eigen::Index i = 0; i < r.rows(); ++i) {
            for (Eigen::Index j = 0; j <= i; ++j) {
                r(i, j) = r(j, i) = gp.correlation(x.row(i).data(), x.row(j).data());
            }
        }
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(r);
        if (eig.info() != Eigen::Success) {
            continue;
        }
        const Eigen::VectorXd lambda = eig.eigenvalues().cwiseMax(0.0);
        const Eigen::VectorXd proj = eig.eigenvectors().transpose() * ys;
        auto lml_at = [&](double log_s2) {
            const double s2 = std::exp(log_s2);
            double v = 0.0;
            for (Eigen::Index i = 0; i < lambda.size(); ++i) {
                const double e = s2 * lambda(i) + tau;
                v -= 0.5 * (proj(i) * proj(i) / e + std::log(e));
            }
            return v;
        };
        // Golden-section search on log sigma2.
        double a = std::log(options.signal_variance_lo);
        double b = std::log(options.signal_variance_hi);
        const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
        double c = b - phi * (b - a);
        double d = a + phi * (b - a);
        double fc = lml_at(c);
        double fd = lml_at(d);
        for (int it = 0; it < 80; ++it) {
            if (fc >= fd) {
                b = d;
                d = c;
                fd = fc;
                c = b - phi * (b - a);
                fc = lml_at(c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + phi * (b - a);
                fd = lml_at(d);
            }
        }
        const double log_s2 = fc >= fd ? c : d;
        const double lml = std::max(fc, fd);
        if (lml > best_lml) {
            best_lml = lml;
            best_ls = gp.lengthscale_;
            best_s2 = std::exp(log_s2);
            best_r = r;
        }
    }
    if (best_r.size() == 0) {
        throw NumericError("gp_fit: eigendecomposition failed at every length-scale");
    }
    gp.lengthscale_ = best_ls;
    gp.signal_variance_ = best_s2;
    // The posterior works with R + (tau / sigma2) I; tau escalates on failure.
    bool ok = false;
    for (double jitter = options.jitter; jitter <= options.max_jitter * (1.0 + 1e-9);
         jitter *= 10.0) {
        Eigen::MatrixXd rj = best_r;
        rj.diagonal().array() += jitter / best_s2;
        gp.chol_.compute(rj);
        if (gp.chol_.info() == Eigen::Success) {
            gp.jitter_ = jitter;
            ok = true;
            break;
        }
    }
    if (!ok) {
        throw NumericError("gp_fit: Cholesky failed even with jitter " +
                           std::to_string(options.max_jitter));
    }
    gp.weights_ = gp.chol_.solve(ys);
    return gp;
}

Posterior GpSurrogate::posterior(std::span<const double> x) const {
    if (static_cast<Eigen::Index>(x.size()) != x_.cols()) {
        throw ShapeError("gp posterior: dimension mismatch");
    }
    Eigen::VectorXd r(x_.rows());
    for (Eigen::Index i = 0; i < x_.rows(); ++i) {
        r(i) = correlation(x_.row(i).data(), x.data());
    }
    Posterior p;
    p.mean = r.dot(weights_);
    const Eigen::VectorXd v = chol_.matrixL().solve(r);
    p.variance = std::max(0.0, signal_variance_ * (1.0 - v.squaredNorm()));
    return p;
}

double GpSurrogate::predict(std::span<const double> x) const {
    return y_mean_ + y_scale_ * posterior(x).mean;
}

double GpSurrogate::expected_improvement(std::span<const double> x) const {
    const Posterior p = posterior(x);
    const double s = std::sqrt(p.variance);
    const double gain = p.mean - best_;
    if (s < 1e-12) {
        return std::max(gain, 0.0);
    }
    const double z = gain / s;
    return std::max(0.0, gain * normal_cdf(z) + s * normal_pdf(z));
}

std::vector<double> suggest(const GpSurrogate &gp, int m, Rng &rng, const SuggestOptions &options) {
    if (m != gp.dimension()) {
        throw ShapeError("suggest: dimension mismatch");
    }
    const auto &observed = gp.inputs();
    auto is_observed = [&observed](const std::vector<double> &c) {
        for (Eigen::Index i = 0; i < observed.rows(); ++i) {
            if (std::equal(c.begin(), c.end(), observed.row(i).data())) {
                return true;
            }
        }
        return false;
    };

    const int n_uniform = std::max(options.n_candidates, 1);
    const int n_local = static_cast<int>(options.perturb_fraction * n_uniform);
    const auto incumbent = observed.row(static_cast<Eigen::Index>(gp.best_index()));

    std::vector<double> best;
    double best_ei = kNegInf;
    std::vector<double> c(static_cast<std::size_t>(m));
    for (int t = 0; t < n_uniform + n_local; ++t) {
        for (int d = 0; d < m; ++d) {
            c[static_cast<std::size_t>(d)] =
                t < n_uniform ? rng.uniform()
                              : std::clamp(incumbent(d) + options.perturb_sd * rng.normal(),
                                           0.0, 1.0);
        }
        if (is_observed(c)) {
            continue;
        }
        const double ei = gp.expected_improvement(c);
        if (ei > best_ei) {
            best_ei = ei;
            best = c;
        }
    }
    if (best.empty()) {
        best = c;
    }
    return best;
}

namespace {

double safe_eval(const Objective &objective, std::span<const double> w, int iteration) {
    try {
        const double v = objective(w);
        if (std::isnan(v)) {
            log::warn("objective returned NaN at iteration ", iteration);
            return kNegInf;
        }
        return v;
    } catch (const Error &e) {
        log::warn("objective failed at iteration ", iteration, ": ", e.what());
        return kNegInf;
    }
}

void record(OptTrace &trace, std::vector<double> w, double value) {
    TraceEntry e;
    e.iteration = static_cast<int>(trace.entries.size());
    e.value = value;
    if (trace.best_iteration < 0 || value > trace.best_value) {
        trace.best_value = value;
        trace.best_weights = w;
        trace.best_iteration = e.iteration;
    }
    e.best_so_far = trace.best_value;
    e.weights = std::move(w);
    trace.entries.push_back(std::move(e));
}

std::vector<double> uniform_point(Rng &rng, int m) {
    std::vector<double> w(static_cast<std::size_t>(m));
    for (auto &v : w) {
        v = rng.uniform();
    }
    return w;
}

} // namespace

OptTrace optimize(const Objective &objective, int m, const OptimizeOptions &options) {
    if (m < 1) {
        throw ParameterError("optimize: dimension must be at least 1");
    }
    if (options.n_init < 1 || options.iterations < options.n_init) {
        throw ParameterError("optimize: require 1 <= n_init <= iterations");
    }
    Rng rng(options.seed);
    OptTrace trace;
    for (int it = 0; it < options.iterations; ++it) {
        std::vector<double> w;
        std::vector<std::size_t> finite;
        for (std::size_t i = 0; i < trace.entries.size(); ++i) {
            if (std::isfinite(trace.entries[i].value)) {
                finite.push_back(i);
            }
        }
        if (it < options.n_init || finite.empty()) {
            w = uniform_point(rng, m);
        } else {
            RowMatrix x(static_cast<Eigen::Index>(finite.size()), m);
            std::vector<double> y;
            for (std::size_t r = 0; r < finite.size(); ++r) {
                const auto &e = trace.entries[finite[r]];
                for (int d = 0; d < m; ++d) {
                    x(static_cast<Eigen::Index>(r), d) = e.weights[static_cast<std::size_t>(d)];
                }
                y.push_back(e.value);
            }
            const auto gp = GpSurrogate::fit(x, y, options.gp);
            w = suggest(gp, m, rng, options.acquisition);
        }
        const double value = safe_eval(objective, w, it);
        log::debug("bo iteration ", it, " value ", value);
        record(trace, std::move(w), value);
    }
    return trace;
}

OptTrace random_search(const Objective &objective, int m, int iterations, std::uint64_t seed) {
    Rng rng(seed);
    OptTrace trace;
    for (int it = 0; it < iterations; ++it) {
        auto w = uniform_point(rng, m);
        const double value = safe_eval(objective, w, it);
        record(trace, std::move(w), value);
    }
    return trace;
}

void write_trace_csv(const OptTrace &trace, std::ostream &out) {
    out << "iteration,value,best_so_far\n";
    for (const auto &e : trace.entries) {
        out << e.iteration << ',' << format_double(e.value) << ',' << format_double(e.best_so_far)
            << '\n';
    }
}

void write_trace_json(const OptTrace &trace, std::ostream &out) {
    auto num = [](double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(); };
    nlohmann::json j;
    j["best_value"] = num(trace.best_value);
    j["best_iteration"] = trace.best_iteration;
    j["best_weights"] = trace.best_weights;
    auto &entries = j["entries"] = nlohmann::json::array();
    for (const auto &e : trace.entries) {
        entries.push_back({{"iteration", e.iteration},
                           {"value", num(e.value)},
                           {"best_so_far", num(e.best_so_far)},
                           {"weights", e.weights}});
    }
    out << j.dump(1) << '\n';
}

} // namespace qfeo::bo
