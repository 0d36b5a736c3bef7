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
#include "qfeo/manipulate.hpp"

#include "qfeo/errors.hpp"

#include <algorithm>
#include <numeric>

namespace qfeo {

RowMatrix take_rows(const RowMatrix &m, const std::vector<int> &rows) {
    RowMatrix out(static_cast<Eigen::Index>(rows.size()), m.cols());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out.row(static_cast<Eigen::Index>(i)) = m.row(rows[i]);
    }
    return out;
}

Labels take(const Labels &labels, const std::vector<int> &rows) {
    Labels out;
    out.reserve(rows.size());
    for (int r : rows) {
        out.push_back(labels[static_cast<std::size_t>(r)]);
    }
    return out;
}

} // namespace qfeo

namespace qfeo::manip {

std::string to_string(Kind kind) {
    switch (kind) {
    case Kind::NFO:
        return "NFO";
    case Kind::FS:
        return "FS";
    case Kind::FO:
        return "FO";
    case Kind::FW:
        return "FW";
    case Kind::FSO:
        return "FSO";
    case Kind::FWO:
        return "FWO";
    case Kind::FWOW:
        return "FWOW";
    }
    return "?";
}

Kind parse_kind(const std::string &name) {
    for (Kind k : {Kind::NFO, Kind::FS, Kind::FO, Kind::FW, Kind::FSO, Kind::FWO, Kind::FWOW}) {
        if (to_string(k) == name) {
            return k;
        }
    }
    throw ParameterError("unknown manipulation '" + name + "'");
}

void ManipulationSpec::validate(std::size_t p) const {
    if (p == 0) {
        throw ParameterError("manipulation needs at least one feature");
    }
    if (selects() && (r < 1 || static_cast<std::size_t>(r) >= p)) {
        throw ParameterError(to_string(kind) + " requires 1 <= r < p (r=" + std::to_string(r) +
                             ", p=" + std::to_string(p) + ")");
    }
}

std::size_t ManipulationSpec::weight_count(std::size_t p) const {
    switch (kind) {
    case Kind::NFO:
        return 0;
    case Kind::FWOW:
        return 2 * p;
    default:
        return p;
    }
}

std::vector<int> rank_by_weights(std::span<const double> w) {
    std::vector<int> order(w.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&w](int a, int b) {
        return w[static_cast<std::size_t>(a)] > w[static_cast<std::size_t>(b)];
    });
    return order;
}

ManipulationPlan make_plan(const ManipulationSpec &spec, std::span<const double> w, std::size_t p) {
    spec.validate(p);
    ManipulationPlan plan;
    plan.input_size = p;
    if (spec.kind == Kind::NFO) {
        plan.source.resize(p);
        std::iota(plan.source.begin(), plan.source.end(), 0);
        plan.scale.assign(p, 1.0);
        return plan;
    }
    const std::size_t m = spec.weight_count(p);
    if (w.size() != m) {
        throw ShapeError(to_string(spec.kind) + " expects " + std::to_string(m) +
                         " weights, got " + std::to_string(w.size()));
    }
    for (double v : w) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw ParameterError("weights must lie in [0, 1]");
        }
    }

    const auto first = w.subspan(0, p);
    switch (spec.kind) {
    case Kind::FS: {
        auto ranked = rank_by_weights(first);
        ranked.resize(static_cast<std::size_t>(spec.r));
        std::sort(ranked.begin(), ranked.end());
        plan.source = std::move(ranked);
        plan.scale.assign(plan.source.size(), 1.0);
        break;
    }
    case Kind::FSO: {
        auto ranked = rank_by_weights(first);
        ranked.resize(static_cast<std::size_t>(spec.r));
        plan.source = std::move(ranked);
        plan.scale.assign(plan.source.size(), 1.0);
        break;
    }
    case Kind::FO:
        plan.source = rank_by_weights(first);
        plan.scale.assign(p, 1.0);
        break;
    case Kind::FW:
        plan.source.resize(p);
        std::iota(plan.source.begin(), plan.source.end(), 0);
        plan.scale.assign(first.begin(), first.end());
        break;
    case Kind::FWO:
    case Kind::FWOW: {
        const auto order_w = spec.kind == Kind::FWO ? first : w.subspan(p, p);
        plan.source = rank_by_weights(order_w);
        plan.scale.reserve(p);
        for (int s : plan.source) {
            plan.scale.push_back(first[static_cast<std::size_t>(s)]);
        }
        break;
    }
    case Kind::NFO:
        break;
    }
    return plan;
}

ManipulatedSample ManipulationPlan::apply(std::span<const double> x) const {
    if (x.size() != input_size) {
        throw ShapeError("sample has " + std::to_string(x.size()) + " features, plan expects " +
                         std::to_string(input_size));
    }
    ManipulatedSample out;
    out.source_indices = source;
    out.values.reserve(source.size());
    for (std::size_t k = 0; k < source.size(); ++k) {
        out.values.push_back(x[static_cast<std::size_t>(source[k])] * scale[k]);
    }
    return out;
}

ManipulatedSample apply_manipulation(const ManipulationSpec &spec, std::span<const double> w,
                                     std::span<const double> x) {
    return make_plan(spec, w, x.size()).apply(x);
}

MinMaxScaler::MinMaxScaler(double lo, double hi) : lo_(lo), hi_(hi) {
    if (!(hi > lo)) {
        throw ParameterError("rescale interval requires hi > lo");
    }
}

void MinMaxScaler::fit(const RowMatrix &train) {
    if (train.rows() == 0 || train.cols() == 0) {
        throw DataError("cannot fit rescaling on an empty matrix");
    }
    const auto cols = static_cast<std::size_t>(train.cols());
    min_.assign(cols, 0.0);
    max_.assign(cols, 0.0);
    for (Eigen::Index c = 0; c < train.cols(); ++c) {
        min_[static_cast<std::size_t>(c)] = train.col(c).minCoeff();
        max_[static_cast<std::size_t>(c)] = train.col(c).maxCoeff();
    }
}

RowMatrix MinMaxScaler::transform(const RowMatrix &data) const {
    if (static_cast<std::size_t>(data.cols()) != min_.size()) {
        throw ShapeError("rescale: column count mismatch");
    }
    RowMatrix out(data.rows(), data.cols());
    for (Eigen::Index c = 0; c < data.cols(); ++c) {
        const double mn = min_[static_cast<std::size_t>(c)];
        const double mx = max_[static_cast<std::size_t>(c)];
        if (mx > mn) {
            const double slope = (hi_ - lo_) / (mx - mn);
            for (Eigen::Index r = 0; r < data.rows(); ++r) {
                out(r, c) = lo_ + (data(r, c) - mn) * slope;
            }
        } else {
            out.col(c).setConstant(0.5 * (lo_ + hi_));
        }
    }
    return out;
}

RowMatrix minmax_rescale(const RowMatrix &train, const RowMatrix &apply_to, double lo, double hi) {
    MinMaxScaler scaler(lo, hi);
    scaler.fit(train);
    return scaler.transform(apply_to);
}

} // namespace qfeo::manip
