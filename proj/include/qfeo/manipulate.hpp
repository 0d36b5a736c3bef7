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

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace qfeo::manip {

enum class Kind { NFO, FS, FO, FW, FSO, FWO, FWOW };

std::string to_string(Kind kind);
Kind parse_kind(const std::string &name);

struct ManipulationSpec {
    Kind kind{Kind::NFO};
    int r{0}; ///< selection count, FS/FSO only

    /// Throws ParameterError unless this manipulation is usable on p features.
    void validate(std::size_t p) const;

    /// Length m of the weight vector driving this manipulation.
    std::size_t weight_count(std::size_t p) const;

    bool selects() const { return kind == Kind::FS || kind == Kind::FSO; }
    bool weights_values() const {
        return kind == Kind::FW || kind == Kind::FWO || kind == Kind::FWOW;
    }
    bool orders() const {
        return kind == Kind::FO || kind == Kind::FSO || kind == Kind::FWO || kind == Kind::FWOW;
    }
};

struct ManipulatedSample {
    std::vector<double> values;
    std::vector<int> source_indices;
};

/// The weight-decoded remapping, shared by every row of a dataset:
/// output position k takes feature source[k] scaled by scale[k].
struct ManipulationPlan {
    std::vector<int> source;
    std::vector<double> scale;

    std::size_t input_size{0};

    ManipulatedSample apply(std::span<const double> x) const;
};

/// Indices sorted by weight descending; ties keep ascending index order.
std::vector<int> rank_by_weights(std::span<const double> w);

ManipulationPlan make_plan(const ManipulationSpec &spec, std::span<const double> w, std::size_t p);

ManipulatedSample apply_manipulation(const ManipulationSpec &spec, std::span<const double> w,
                                     std::span<const double> x);

/// Column-wise affine map fitted on one matrix and reused on others.
/// Train min maps to lo and train max to hi; constant columns map to the
/// midpoint.
class MinMaxScaler {
  public:
    MinMaxScaler(double lo, double hi);

    void fit(const RowMatrix &train);
    RowMatrix transform(const RowMatrix &data) const;

    const std::vector<double> &column_min() const { return min_; }
    const std::vector<double> &column_max() const { return max_; }

  private:
    double lo_;
    double hi_;
    std::vector<double> min_;
    std::vector<double> max_;
};

RowMatrix minmax_rescale(const RowMatrix &train, const RowMatrix &apply_to, double lo, double hi);

} // namespace qfeo::manip
