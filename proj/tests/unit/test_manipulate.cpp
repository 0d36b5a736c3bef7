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
#include "qfeo/errors.hpp"
#include "qfeo/manipulate.hpp"
#include "qfeo/rng.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>

using namespace qfeo::manip;

namespace {

const std::vector<double> kW{0.1, 0.5, 0.02, 0.8, 0.4};
const std::vector<double> kX{1.0, 2.0, 3.0, 4.0, 5.0}; // x1..x5

std::vector<double> random_vec(qfeo::Rng &rng, std::size_t n, double lo, double hi) {
    std::vector<double> v(n);
    for (auto &x : v) {
        x = rng.uniform(lo, hi);
    }
    return v;
}

} // namespace

TEST_CASE("minmax rescale") {
    qfeo::RowMatrix train(3, 2);
    train << 0, 4, 5, 4, 10, 4;
    const auto out = minmax_rescale(train, train, 0.3, 2.8);
    CHECK(out(0, 0) == doctest::Approx(0.3));
    CHECK(out(1, 0) == doctest::Approx(1.55));
    CHECK(out(2, 0) == doctest::Approx(2.8));
    for (int r = 0; r < 3; ++r) {
        CHECK(out(r, 1) == doctest::Approx(1.55));
    }
    qfeo::RowMatrix test(1, 2);
    test << 20, 9;
    const auto t = minmax_rescale(train, test, 0.3, 2.8);
    CHECK(t(0, 0) == doctest::Approx(5.3));
    CHECK_THROWS_AS(minmax_rescale(qfeo::RowMatrix(0, 2), test, 0.3, 2.8), qfeo::DataError);
    CHECK_THROWS_AS(MinMaxScaler(1.0, 1.0), qfeo::ParameterError);
}

TEST_CASE("rank by weights") {
    CHECK(rank_by_weights(kW) == std::vector<int>{3, 1, 4, 0, 2});
    const std::vector<double> equal(6, 0.3);
    CHECK(rank_by_weights(equal) == std::vector<int>{0, 1, 2, 3, 4, 5});
    const std::vector<double> inc{0.1, 0.2, 0.3, 0.4};
    CHECK(rank_by_weights(inc) == std::vector<int>{3, 2, 1, 0});
}

TEST_CASE("manipulation kinds") {
    const auto nfo = apply_manipulation({Kind::NFO, 0}, {}, kX);
    CHECK(nfo.values == kX);

    const auto fs = apply_manipulation({Kind::FS, 3}, kW, kX);
    CHECK(fs.source_indices == std::vector<int>{1, 3, 4});
    CHECK(fs.values == std::vector<double>{2.0, 4.0, 5.0});

    // Highest weights first: x4 (0.8), x2 (0.5), x5 (0.4).
    const auto fso = apply_manipulation({Kind::FSO, 3}, kW, kX);
    CHECK(fso.source_indices == std::vector<int>{3, 1, 4});
    CHECK(fso.values == std::vector<double>{4.0, 2.0, 5.0});

    const auto fo = apply_manipulation({Kind::FO, 0}, kW, kX);
    CHECK(fo.values == std::vector<double>{4.0, 2.0, 5.0, 1.0, 3.0});

    const std::vector<double> ones(5, 1.0);
    CHECK(apply_manipulation({Kind::FW, 0}, ones, kX).values == kX);
    const auto fw = apply_manipulation({Kind::FW, 0}, kW, kX);
    CHECK(fw.values[3] == doctest::Approx(3.2));

    const auto fwo = apply_manipulation({Kind::FWO, 0}, kW, kX);
    CHECK(fwo.source_indices == std::vector<int>{3, 1, 4, 0, 2});
    CHECK(fwo.values[0] == doctest::Approx(4.0 * 0.8));

    std::vector<double> fwow(5, 1.0);
    for (double v : {0.1, 0.02, 0.6, 0.8, 0.4}) {
        fwow.push_back(v);
    }
    const auto ww = apply_manipulation({Kind::FWOW, 0}, fwow, kX);
    CHECK(ww.source_indices == std::vector<int>{3, 2, 4, 0, 1});
    CHECK(ww.values == std::vector<double>{4.0, 3.0, 5.0, 1.0, 2.0});
}

TEST_CASE("manipulation guards") {
    CHECK_THROWS_AS(apply_manipulation({Kind::FS, 5}, kW, kX), qfeo::ParameterError);
    CHECK_THROWS_AS(apply_manipulation({Kind::FS, 0}, kW, kX), qfeo::ParameterError);
    CHECK_THROWS_AS(apply_manipulation({Kind::FW, 0}, std::vector<double>{0.5, 0.5}, kX), qfeo::ShapeError);
    CHECK_THROWS_AS(apply_manipulation({Kind::FWOW, 0}, kW, kX), qfeo::ShapeError);
    const std::vector<double> bad{0.1, 1.5, 0.2, 0.3, 0.4};
    CHECK_THROWS_AS(apply_manipulation({Kind::FO, 0}, bad, kX), qfeo::ParameterError);
    CHECK(ManipulationSpec{Kind::FWOW, 0}.weight_count(7) == 14);
    CHECK(parse_kind("FSO") == Kind::FSO);
    CHECK_THROWS_AS(parse_kind("FX"), qfeo::ParameterError);
}

TEST_CASE("property: FSO is FS reordered by weight") {
    qfeo::Rng rng(1);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t p = 2 + rng.below(15);
        const int r = 1 + static_cast<int>(rng.below(p - 1));
        const auto w = random_vec(rng, p, 0.0, 1.0);
        const auto x = random_vec(rng, p, -3.0, 3.0);
        auto fs = apply_manipulation({Kind::FS, r}, w, x).source_indices;
        auto fso = apply_manipulation({Kind::FSO, r}, w, x).source_indices;
        REQUIRE(fs.size() == static_cast<std::size_t>(r));
        CHECK(std::is_sorted(fs.begin(), fs.end()));
        for (std::size_t k = 1; k < fso.size(); ++k) {
            CHECK(w[static_cast<std::size_t>(fso[k - 1])] >= w[static_cast<std::size_t>(fso[k])]);
        }
        std::sort(fso.begin(), fso.end());
        CHECK(fs == fso);
    }
}

TEST_CASE("property: neutral weights reproduce NFO") {
    qfeo::Rng rng(2);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t p = 1 + rng.below(20);
        const auto x = random_vec(rng, p, -3.0, 3.0);
        const std::vector<double> ones(p, 1.0);
        const auto nfo = apply_manipulation({Kind::NFO, 0}, {}, x);
        CHECK(apply_manipulation({Kind::FWO, 0}, ones, x).values == nfo.values);
        CHECK(apply_manipulation({Kind::FO, 0}, ones, x).values == nfo.values);
        CHECK(apply_manipulation({Kind::FO, 0}, ones, x).source_indices == nfo.source_indices);
    }
}

TEST_CASE("property: weighting keeps the sign") {
    qfeo::Rng rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t p = 1 + rng.below(20);
        auto w = random_vec(rng, p, 0.0, 1.0);
        for (auto &v : w) {
            v = std::max(v, 1e-9);
        }
        const auto x = random_vec(rng, p, -3.0, 3.0);
        const auto out = apply_manipulation({Kind::FW, 0}, w, x);
        for (std::size_t i = 0; i < p; ++i) {
            CHECK((out.values[i] > 0) == (x[i] > 0));
        }
    }
}

TEST_CASE("property: one plan maps every row identically") {
    qfeo::Rng rng(4);
    const std::size_t p = 9;
    const auto w = random_vec(rng, 2 * p, 0.0, 1.0);
    const auto plan = make_plan({Kind::FWOW, 0}, w, p);
    for (int row = 0; row < 20; ++row) {
        const auto x = random_vec(rng, p, 0.3, 2.8);
        const auto direct = apply_manipulation({Kind::FWOW, 0}, w, x);
        const auto via = plan.apply(x);
        CHECK(direct.source_indices == plan.source);
        CHECK(direct.values == via.values);
    }
}
