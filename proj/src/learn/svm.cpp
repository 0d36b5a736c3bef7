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
#include "qfeo/learn/svm.hpp"

#include "qfeo/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace qfeo::learn {

double rbf_kernel(const double *a, const double *b, Eigen::Index dim, double gamma) {
    double sq = 0.0;
    for (Eigen::Index k = 0; k < dim; ++k) {
        const double diff = a[k] - b[k];
        sq += diff * diff;
    }
    return std::exp(-gamma * sq);
}

namespace {

void check_classes(const Labels &y) {
    int counts[2] = {0, 0};
    for (int v : y) {
        if (v != 0 && v != 1) {
            throw TrainingError("labels must be 0 or 1");
        }
        ++counts[v];
    }
    if (counts[0] < 2 || counts[1] < 2) {
        throw TrainingError("need at least two samples per class (got " +
                            std::to_string(counts[0]) + " negative, " +
                            std::to_string(counts[1]) + " positive)");
    }
}

} // namespace

SvmModel train_svm(const RowMatrix &x, const Labels &y, double c, double gamma,
                   const SvmOptions &options) {
    if (static_cast<std::size_t>(x.rows()) != y.size()) {
        throw ShapeError("train_svm: row/label count mismatch");
    }
    if (!(c > 0.0) || !(gamma > 0.0)) {
        throw ParameterError("train_svm: C and gamma must be positive");
    }
    check_classes(y);

    const auto n = static_cast<std::size_t>(x.rows());
    const Eigen::Index dim = x.cols();
    std::vector<double> sign(n);
    for (std::size_t i = 0; i < n; ++i) {
        sign[i] = y[i] == 1 ? 1.0 : -1.0;
    }

    // Gram matrix; the diagonal of an RBF kernel is 1.
    Eigen::MatrixXd gram(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        gram(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = 1.0;
        for (std::size_t j = 0; j < i; ++j) {
            const double k = rbf_kernel(x.row(static_cast<Eigen::Index>(i)).data(),
                                        x.row(static_cast<Eigen::Index>(j)).data(), dim, gamma);
            gram(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = k;
            gram(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = k;
        }
    }
    auto kern = [&gram](std::size_t i, std::size_t j) {
        return gram(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    };

    std::vector<double> alpha(n, 0.0);
    std::vector<double> grad(n, -1.0);
    constexpr double kTau = 1e-12;
    const long long cap = std::max<long long>(options.iteration_factor *
                                                  static_cast<long long>(n) *
                                                  static_cast<long long>(n),
                                              1000);
    auto in_up = [&](std::size_t t) {
        return (sign[t] > 0 && alpha[t] < c) || (sign[t] < 0 && alpha[t] > 0);
    };
    auto in_low = [&](std::size_t t) {
        return (sign[t] > 0 && alpha[t] > 0) || (sign[t] < 0 && alpha[t] < c);
    };

    long long iter = 0;
    double gap = 0.0;
    for (;; ++iter) {
        double gmax = -std::numeric_limits<double>::infinity();
        std::size_t i = n;
        for (std::size_t t = 0; t < n; ++t) {
            if (in_up(t) && -sign[t] * grad[t] >= gmax) {
                gmax = -sign[t] * grad[t];
                i = t;
            }
        }
        double gmax2 = -std::numeric_limits<double>::infinity();
        double best_obj = std::numeric_limits<double>::infinity();
        std::size_t j = n;
        for (std::size_t t = 0; t < n; ++t) {
            if (!in_low(t)) {
                continue;
            }
            const double v = sign[t] * grad[t];
            gmax2 = std::max(gmax2, v);
            if (i == n) {
                continue;
            }
            const double b = gmax + v;
            if (b > 0.0) {
                double a = kern(i, i) + kern(t, t) - 2.0 * kern(i, t);
                if (a <= 0.0) {
                    a = kTau;
                }
                const double obj = -(b * b) / a;
                if (obj <= best_obj) {
                    best_obj = obj;
                    j = t;
                }
            }
        }
        gap = gmax + gmax2;
        if (gap < options.tolerance || i == n || j == n) {
            break;
        }
        if (iter >= cap) {
            std::ostringstream os;
            os << "SMO did not converge after " << iter << " iterations (n=" << n
               << ", C=" << c << ", gamma=" << gamma << ", KKT gap=" << gap << ")";
            throw TrainingError(os.str());
        }

        const double old_i = alpha[i];
        const double old_j = alpha[j];
        double quad = kern(i, i) + kern(j, j) - 2.0 * kern(i, j);
        if (quad <= 0.0) {
            quad = kTau;
        }
        double &ai = alpha[i];
        double &aj = alpha[j];
        if (sign[i] != sign[j]) {
            const double delta = (-grad[i] - grad[j]) / quad;
            const double diff = ai - aj;
            ai += delta;
            aj += delta;
            if (diff > 0.0) {
                if (aj < 0.0) {
                    aj = 0.0;
                    ai = diff;
                }
            } else if (ai < 0.0) {
                ai = 0.0;
                aj = -diff;
            }
            if (diff > 0.0) {
                if (ai > c) {
                    ai = c;
                    aj = c - diff;
                }
            } else if (aj > c) {
                aj = c;
                ai = c + diff;
            }
        } else {
            const double delta = (grad[i] - grad[j]) / quad;
            const double sum = ai + aj;
            ai -= delta;
            aj += delta;
            if (sum > c) {
                if (ai > c) {
                    ai = c;
                    aj = sum - c;
                }
            } else if (aj < 0.0) {
                aj = 0.0;
                ai = sum;
            }
            if (sum > c) {
                if (aj > c) {
                    aj = c;
                    ai = sum - c;
                }
            } else if (ai < 0.0) {
                ai = 0.0;
                aj = sum;
            }
        }
        const double di = ai - old_i;
        const double dj = aj - old_j;
        for (std::size_t t = 0; t < n; ++t) {
            grad[t] += sign[t] * (sign[i] * kern(t, i) * di + sign[j] * kern(t, j) * dj);
        }
    }

    // Bias from free vectors, or the midpoint of the feasible interval.
    double ub = std::numeric_limits<double>::infinity();
    double lb = -std::numeric_limits<double>::infinity();
    double free_sum = 0.0;
    int free_count = 0;
    for (std::size_t t = 0; t < n; ++t) {
        const double yg = sign[t] * grad[t];
        const bool at_upper = alpha[t] >= c;
        const bool at_lower = alpha[t] <= 0.0;
        if (at_upper) {
            if (sign[t] < 0) {
                ub = std::min(ub, yg);
            } else {
                lb = std::max(lb, yg);
            }
        } else if (at_lower) {
            if (sign[t] > 0) {
                ub = std::min(ub, yg);
            } else {
                lb = std::max(lb, yg);
            }
        } else {
            free_sum += yg;
            ++free_count;
        }
    }

    SvmModel model;
    model.rho_ = free_count > 0 ? free_sum / free_count : 0.5 * (ub + lb);
    model.gamma_ = gamma;
    model.alpha_ = alpha;
    model.kkt_gap_ = gap;
    model.iterations_ = iter;
    std::vector<int> support;
    for (std::size_t t = 0; t < n; ++t) {
        if (alpha[t] > 0.0) {
            support.push_back(static_cast<int>(t));
            model.coef_.push_back(alpha[t] * sign[t]);
        }
    }
    model.sv_ = take_rows(x, support);
    return model;
}

double SvmModel::decision(const double *row) const {
    double sum = -rho_;
    for (Eigen::Index s = 0; s < sv_.rows(); ++s) {
        sum += coef_[static_cast<std::size_t>(s)] *
               rbf_kernel(sv_.row(s).data(), row, sv_.cols(), gamma_);
    }
    return sum;
}

std::vector<double> SvmModel::decision(const RowMatrix &x) const {
    if (x.cols() != sv_.cols()) {
        throw ShapeError("svm decision: column count mismatch");
    }
    std::vector<double> out(static_cast<std::size_t>(x.rows()));
    for (Eigen::Index r = 0; r < x.rows(); ++r) {
        out[static_cast<std::size_t>(r)] = decision(x.row(r).data());
    }
    return out;
}

} // namespace qfeo::learn
