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
#include "qfeo/expressibility.hpp"
#include "qfeo/parallel.hpp"
#include "qfeo/rng.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <sstream>

using namespace qfeo;
using namespace qfeo::expr;
using Eigen::MatrixXcd;

namespace {

MatrixXcd random_complex(Rng &rng, int rows, int cols) {
    MatrixXcd m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            m(i, j) = {rng.normal(), rng.normal()};
        }
    }
    return m;
}

// Singular values from the eigenvalues of S^H S, descending.
std::vector<double> eigen_oracle(const MatrixXcd &s) {
    const Eigen::SelfAdjointEigenSolver<MatrixXcd> eig(s.adjoint() * s);
    std::vector<double> sv;
    for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) {
        sv.push_back(std::sqrt(std::max(eig.eigenvalues()(i), 0.0)));
    }
    std::sort(sv.rbegin(), sv.rend());
    return sv;
}

StudyConfig hh4_study(int t, int reps) {
    StudyConfig cfg;
    // Four features on four qubits, one per brickwork slot.
    cfg.feature_map = fmap::preset("hh-1", 4);
    cfg.kinds = {manip::Kind::FO, manip::Kind::FW};
    cfg.n_features = 4;
    cfg.t = t;
    cfg.repetitions = reps;
    cfg.fractions = {0.5, 0.95};
    cfg.seed = 17;
    return cfg;
}

} // namespace

TEST_CASE("reconstruction error on known ranks") {
    Rng rng(1);
    const MatrixXcd a = random_complex(rng, 12, 3);
    const MatrixXcd b = random_complex(rng, 3, 8);
    const MatrixXcd s = a * b; // rank 3
    CHECK(reconstruction_error(s, 3) < 1e-9);
    CHECK(reconstruction_error(s, 2) > 1e-3);
    const MatrixXcd one = random_complex(rng, 6, 1) * random_complex(rng, 1, 5);
    CHECK(reconstruction_error(one, 1) < 1e-9);
    CHECK_THROWS_AS(reconstruction_error(one, 0), ParameterError);
    CHECK_THROWS_AS(reconstruction_error(one, 6), ParameterError);
}

TEST_CASE("reconstruction error matches an eigenvalue oracle") {
    Rng rng(2);
    for (int trial = 0; trial < 50; ++trial) {
        const MatrixXcd s = random_complex(rng, 10, 8);
        const auto oracle = eigen_oracle(s);
        for (int r = 1; r <= 8; ++r) {
            const double expected = r < 8 ? oracle[static_cast<std::size_t>(r)] : 0.0;
            CHECK(std::abs(reconstruction_error(s, r) - expected) < 1e-8);
        }
        // The rank-r truncation error in spectral norm, built directly.
        const Eigen::JacobiSVD<MatrixXcd> svd(s, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const int r = 3;
        const MatrixXcd approx = svd.matrixU().leftCols(r) *
                                 svd.singularValues().head(r).asDiagonal() *
                                 svd.matrixV().leftCols(r).adjoint();
        const double spectral = eigen_oracle(s - approx)[0];
        CHECK(std::abs(reconstruction_error(s, r) - spectral) < 1e-8);
    }
}

TEST_CASE("components for variance") {
    Rng rng(3);
    const MatrixXcd s = random_complex(rng, 20, 2) * random_complex(rng, 2, 6);
    const MatrixXcd centered = s.rowwise() - s.colwise().mean();
    const Eigen::JacobiSVD<MatrixXcd> svd(centered);
    int rank = 0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
        rank += svd.singularValues()(i) > 1e-8 * svd.singularValues()(0) ? 1 : 0;
    }
    CHECK(components_for_variance(s, 1.0) == rank);

    MatrixXcd line(5, 3);
    for (int i = 0; i < 5; ++i) {
        line.row(i) << double(i), 2.0 * i, -1.0 * i;
    }
    CHECK(components_for_variance(line, 0.5) == 1);
    CHECK(components_for_variance(line, 1.0) == 1);
    CHECK_THROWS_AS(components_for_variance(line, 0.0), ParameterError);
    CHECK_THROWS_AS(components_for_variance(line, 1.5), ParameterError);
}

TEST_CASE("state matrix construction") {
    const fmap::FeatureMap map(fmap::preset("hh-0", 4));
    const std::vector<double> base{0.4, 1.1, 2.0, 0.8, 2.7, 1.6};
    Rng rng(4);
    const auto s = build_state_matrix(map, manip::Kind::FO, base, 1000, rng);
    CHECK(s.rows() == 1000);
    CHECK(s.cols() == 16);
    for (Eigen::Index i = 0; i < s.rows(); ++i) {
        CHECK(s.row(i).norm() == doctest::Approx(1.0).epsilon(1e-12));
    }
    const Eigen::VectorXd sv = singular_values(s);
    CHECK(sv.squaredNorm() == doctest::Approx(1000.0).epsilon(1e-9));

    Rng a(5);
    const std::vector<double> single{1.3};
    const auto fo = build_state_matrix(map, manip::Kind::FO, single, 20, a);
    for (Eigen::Index i = 1; i < fo.rows(); ++i) {
        CHECK(fo.row(i) == fo.row(0));
    }

    // One FW row is the encoding of the base features scaled by the drawn weights.
    Rng b(6);
    const auto fw = build_state_matrix(map, manip::Kind::FW, base, 1, b);
    Rng replay(6);
    std::vector<double> scaled;
    for (double v : base) {
        scaled.push_back(v * replay.uniform());
    }
    const auto state = map.encode(scaled);
    for (Eigen::Index k = 0; k < 16; ++k) {
        CHECK(fw(0, k) == state[static_cast<std::size_t>(k)]);
    }
    Rng c(7);
    CHECK_THROWS_AS(build_state_matrix(map, manip::Kind::FWOW, base, 3, c), ParameterError);
}

TEST_CASE("study curves") {
    auto cfg = hh4_study(60, 3);
    cfg.kinds = {manip::Kind::FO, manip::Kind::FS, manip::Kind::FW};
    const auto a = expressibility_study(cfg);
    const auto b = expressibility_study(cfg);
    REQUIRE(a.curves.size() == 3);
    for (std::size_t k = 0; k < 3; ++k) {
        const auto &curve = a.curves[k].error;
        CHECK(curve.size() == 16);
        for (std::size_t r = 1; r < curve.size(); ++r) {
            CHECK(curve[r].mean <= curve[r - 1].mean + 1e-12);
        }
        for (const auto &run : a.curves[k].error_runs) {
            for (std::size_t r = 1; r < run.size(); ++r) {
                CHECK(run[r] <= run[r - 1] + 1e-12);
            }
        }
        CHECK(a.curves[k].error_runs == b.curves[k].error_runs);
    }

    cfg.repetitions = 1;
    const auto one = expressibility_study(cfg);
    for (const auto &kc : one.curves) {
        for (std::size_t r = 0; r < kc.error.size(); ++r) {
            CHECK(kc.error[r].mean == kc.error_runs[0][r]);
            CHECK(kc.error[r].std == 0.0);
        }
    }
    std::ostringstream os;
    write_error_csv(one, os);
    CHECK(os.str().rfind("kind,x,mean,std\nFO,1,", 0) == 0);
}

TEST_CASE("study does not depend on the worker count") {
    const auto cfg = hh4_study(40, 4);
    set_worker_count(1);
    const auto a = expressibility_study(cfg);
    set_worker_count(4);
    const auto b = expressibility_study(cfg);
    set_worker_count(1);
    for (std::size_t k = 0; k < a.curves.size(); ++k) {
        CHECK(a.curves[k].error_runs == b.curves[k].error_runs);
        CHECK(a.curves[k].component_runs == b.curves[k].component_runs);
    }
}

TEST_CASE("ordering explores more of the Hilbert space than weighting") {
    const auto result = expressibility_study(hh4_study(1000, 30));
    const auto &fo = result.curves[0];
    const auto &fw = result.curves[1];
    MESSAGE("components at 0.95: FO ", fo.components[1].mean, " FW ", fw.components[1].mean);
    CHECK(fo.components[1].mean > fw.components[1].mean);
    CHECK(fo.error[1].mean > fw.error[1].mean);
}

TEST_CASE("base features are rescaled per draw") {
    StudyConfig cfg;
    cfg.n_features = 6;
    cfg.seed = 3;
    const auto v = base_features(cfg, 0);
    CHECK(*std::min_element(v.begin(), v.end()) == doctest::Approx(0.3));
    CHECK(*std::max_element(v.begin(), v.end()) == doctest::Approx(2.8));
    CHECK(base_features(cfg, 1) != v);
}
