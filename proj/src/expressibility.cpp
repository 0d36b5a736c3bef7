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
#include "qfeo/expressibility.hpp"

#include "qfeo/errors.hpp"
#include "qfeo/format.hpp"
#include "qfeo/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

namespace qfeo::expr {

namespace {

void check_kind(manip::Kind kind) {
    if (kind != manip::Kind::FO && kind != manip::Kind::FW && kind != manip::Kind::FS) {
        throw ParameterError("expressibility supports FO, FS and FW only, not " +
                             manip::to_string(kind));
    }
}

double mean_of(const std::vector<double> &v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double std_of(const std::vector<double> &v) {
    if (v.size() < 2) {
        return 0.0;
    }
    const double m = mean_of(v);
    double ss = 0.0;
    for (double x : v) {
        ss += (x - m) * (x - m);
    }
    return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

} // namespace

StateMatrix build_state_matrix(const fmap::FeatureMap &map, manip::Kind kind,
                               std::span<const double> base_features, int t, Rng &rng,
                               int fs_r) {
    check_kind(kind);
    if (t < 1) {
        throw ParameterError("state matrix needs T >= 1");
    }
    const std::size_t p = base_features.size();
    if (p == 0) {
        throw ParameterError("state matrix needs at least one feature");
    }
    const std::size_t r = fs_r > 0 ? static_cast<std::size_t>(fs_r) : std::max<std::size_t>(p / 2, 1);
    if (kind == manip::Kind::FS && r > p) {
        throw ParameterError("FS subset size exceeds the feature count");
    }
    const std::size_t dim = std::size_t{1} << map.n_qubits();
    StateMatrix s(t, static_cast<Eigen::Index>(dim));
    std::vector<int> order(p);
    std::vector<double> x;
    for (int row = 0; row < t; ++row) {
        x.clear();
        std::iota(order.begin(), order.end(), 0);
        switch (kind) {
        case manip::Kind::FO:
            rng.shuffle(std::span<int>(order));
            for (int i : order) {
                x.push_back(base_features[static_cast<std::size_t>(i)]);
            }
            break;
        case manip::Kind::FW:
            for (double v : base_features) {
                x.push_back(v * rng.uniform());
            }
            break;
        default: {
            rng.shuffle(std::span<int>(order));
            std::vector<int> chosen(order.begin(), order.begin() + static_cast<long>(r));
            std::sort(chosen.begin(), chosen.end());
            for (int i : chosen) {
                x.push_back(base_features[static_cast<std::size_t>(i)]);
            }
            break;
        }
        }
        const auto state = map.encode(x);
        for (std::size_t k = 0; k < dim; ++k) {
            s(row, static_cast<Eigen::Index>(k)) = state[k];
        }
    }
    return s;
}

Eigen::VectorXd singular_values(const Eigen::MatrixXcd &m) {
    return Eigen::BDCSVD<Eigen::MatrixXcd>(m).singularValues();
}

double reconstruction_error(const StateMatrix &s, int r) {
    const auto limit = std::min(s.rows(), s.cols());
    if (r < 1 || r > limit) {
        throw ParameterError("rank " + std::to_string(r) + " outside [1, " +
                             std::to_string(limit) + "]");
    }
    const Eigen::VectorXd sv = singular_values(s);
    return r < sv.size() ? sv(r) : 0.0;
}

int components_for_variance(const StateMatrix &s, double fraction) {
    if (!(fraction > 0.0 && fraction <= 1.0)) {
        throw ParameterError("variance fraction must lie in (0, 1]");
    }
    Eigen::MatrixXcd centered = s.rowwise() - s.colwise().mean();
    const Eigen::VectorXd sv = singular_values(centered);
    const double total = sv.squaredNorm();
    // Round-off tolerance relative to the largest singular value.
    const double tiny = sv.size() > 0 ? 1e-10 * sv(0) * sv(0) : 0.0;
    if (total <= tiny) {
        return 0;
    }
    double acc = 0.0;
    for (Eigen::Index k = 0; k < sv.size(); ++k) {
        if (sv(k) * sv(k) <= tiny) {
            return static_cast<int>(k);
        }
        acc += sv(k) * sv(k);
        if (acc >= fraction * total * (1.0 - 1e-12)) {
            return static_cast<int>(k + 1);
        }
    }
    return static_cast<int>(sv.size());
}

void StudyConfig::validate() const {
    feature_map.validate();
    if (kinds.empty()) {
        throw ParameterError("expressibility study needs at least one kind");
    }
    for (auto k : kinds) {
        check_kind(k);
    }
    if (n_features < 1 || t < 1 || repetitions < 1) {
        throw ParameterError("n_features, T and repetitions must be positive");
    }
    if (fs_r > n_features) {
        throw ParameterError("fs_r exceeds n_features");
    }
    for (double f : fractions) {
        if (!(f > 0.0 && f <= 1.0)) {
            throw ParameterError("variance fractions must lie in (0, 1]");
        }
    }
}

std::vector<double> base_features(const StudyConfig &cfg, int repetition) {
    Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(repetition), 0));
    std::vector<double> v(static_cast<std::size_t>(cfg.n_features));
    for (auto &x : v) {
        x = rng.normal();
    }
    const auto [mn, mx] = std::minmax_element(v.begin(), v.end());
    const double lo = *mn;
    const double hi = *mx;
    for (auto &x : v) {
        x = hi > lo ? cfg.rescale_lo + (x - lo) * (cfg.rescale_hi - cfg.rescale_lo) / (hi - lo)
                    : 0.5 * (cfg.rescale_lo + cfg.rescale_hi);
    }
    return v;
}

StudyResult expressibility_study(const StudyConfig &cfg) {
    cfg.validate();
    std::vector<double> fractions = cfg.fractions;
    if (fractions.empty()) {
        for (int i = 1; i <= 20; ++i) {
            fractions.push_back(i / 20.0);
        }
    }
    const fmap::FeatureMap map(cfg.feature_map);
    const int max_rank = static_cast<int>(
        std::min<std::size_t>(static_cast<std::size_t>(cfg.t), std::size_t{1} << map.n_qubits()));

    StudyResult result;
    for (auto kind : cfg.kinds) {
        KindCurves kc;
        kc.kind = kind;
        kc.error_runs.resize(static_cast<std::size_t>(cfg.repetitions));
        kc.component_runs.resize(static_cast<std::size_t>(cfg.repetitions));
        parallel_for(static_cast<std::size_t>(cfg.repetitions), [&](std::size_t rep) {
            const auto base = base_features(cfg, static_cast<int>(rep));
            Rng rng(derive_seed(cfg.seed, rep, 1 + static_cast<std::uint64_t>(kind)));
            const auto s = build_state_matrix(map, kind, base, cfg.t, rng, cfg.fs_r);
            const Eigen::VectorXd sv = singular_values(s);
            auto &errors = kc.error_runs[rep];
            for (int r = 1; r <= max_rank; ++r) {
                errors.push_back(r < sv.size() ? sv(r) : 0.0);
            }
            auto &comps = kc.component_runs[rep];
            for (double f : fractions) {
                comps.push_back(components_for_variance(s, f));
            }
        });
        for (int r = 1; r <= max_rank; ++r) {
            std::vector<double> col;
            for (const auto &run : kc.error_runs) {
                col.push_back(run[static_cast<std::size_t>(r - 1)]);
            }
            kc.error.push_back({static_cast<double>(r), mean_of(col), std_of(col)});
        }
        for (std::size_t i = 0; i < fractions.size(); ++i) {
            std::vector<double> col;
            for (const auto &run : kc.component_runs) {
                col.push_back(run[i]);
            }
            kc.components.push_back({fractions[i], mean_of(col), std_of(col)});
        }
        result.curves.push_back(std::move(kc));
    }
    return result;
}

namespace {

void write_curves(const StudyResult &result, std::ostream &out, bool errors) {
    out << "kind,x,mean,std\n";
    for (const auto &kc : result.curves) {
        for (const auto &pt : errors ? kc.error : kc.components) {
            out << manip::to_string(kc.kind) << ',' << format_double(pt.x) << ','
                << format_double(pt.mean) << ',' << format_double(pt.std) << '\n';
        }
    }
}

} // namespace

void write_error_csv(const StudyResult &result, std::ostream &out) {
    write_curves(result, out, true);
}

void write_components_csv(const StudyResult &result, std::ostream &out) {
    write_curves(result, out, false);
}

} // namespace qfeo::expr
