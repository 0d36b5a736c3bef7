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
#include "qfeo/data.hpp"

#include "qfeo/errors.hpp"
#include "qfeo/format.hpp"
#include "qfeo/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <span>
#include <sstream>

namespace qfeo::data {

namespace {

std::string trim(const std::string &s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return "";
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_line(const std::string &line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        cells.push_back(trim(cell));
    }
    if (!line.empty() && line.back() == ',') {
        cells.emplace_back();
    }
    return cells;
}

} // namespace

Dataset parse_csv(std::istream &in, const std::string &source) {
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        ++line_no;
        if (!trim(line).empty()) {
            header = split_line(line);
            break;
        }
    }
    if (header.empty()) {
        throw DataError(source + ": empty file");
    }
    if (header.size() < 2) {
        throw DataError(source + ": need at least one feature column and a label column");
    }
    const std::size_t p = header.size() - 1;

    std::vector<double> values;
    Labels labels;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) {
            continue;
        }
        const auto cells = split_line(line);
        if (cells.size() != header.size()) {
            throw DataError(source + ": line " + std::to_string(line_no) + " has " +
                            std::to_string(cells.size()) + " cells, expected " +
                            std::to_string(header.size()));
        }
        for (std::size_t c = 0; c < cells.size(); ++c) {
            const std::string &cell = cells[c];
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size() ||
                !std::isfinite(v)) {
                throw DataError(source + ": line " + std::to_string(line_no) + ", column " +
                                std::to_string(c + 1) + " ('" + header[c] +
                                "'): not a finite number: '" + cell + "'");
            }
            if (c < p) {
                values.push_back(v);
            } else {
                if (v != 0.0 && v != 1.0) {
                    throw DataError(source + ": line " + std::to_string(line_no) +
                                    ": label must be 0 or 1, got '" + cell + "'");
                }
                labels.push_back(static_cast<int>(v));
            }
        }
    }
    if (labels.empty()) {
        throw DataError(source + ": no data rows");
    }

    Dataset ds;
    ds.feature_names.assign(header.begin(), header.end() - 1);
    ds.labels = std::move(labels);
    ds.features = Eigen::Map<const RowMatrix>(values.data(),
                                              static_cast<Eigen::Index>(ds.labels.size()),
                                              static_cast<Eigen::Index>(p));
    return ds;
}

Dataset load_csv(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot open " + path);
    }
    return parse_csv(in, path);
}

void write_csv(const Dataset &ds, std::ostream &out) {
    for (const auto &name : ds.feature_names) {
        out << name << ',';
    }
    out << "label\n";
    for (Eigen::Index r = 0; r < ds.features.rows(); ++r) {
        for (Eigen::Index c = 0; c < ds.features.cols(); ++c) {
            out << format_double(ds.features(r, c)) << ',';
        }
        out << ds.labels[static_cast<std::size_t>(r)] << '\n';
    }
}

void write_csv(const Dataset &ds, const std::string &path) {
    std::ofstream out(path);
    if (!out) {
        throw DataError("cannot open " + path + " for writing");
    }
    write_csv(ds, out);
}

std::vector<Split> stratified_batches(const Labels &labels, int n_batches, double test_fraction,
                                      bool balance, std::uint64_t seed) {
    if (n_batches < 1) {
        throw ParameterError("stratified_batches: need at least one batch");
    }
    if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
        throw ParameterError("stratified_batches: test fraction must lie in (0, 1)");
    }
    std::vector<int> by_class[2];
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] != 0 && labels[i] != 1) {
            throw DataError("stratified_batches: labels must be 0 or 1");
        }
        by_class[labels[i]].push_back(static_cast<int>(i));
    }
    if (by_class[0].size() < 2 || by_class[1].size() < 2) {
        throw DataError("stratified_batches: each class needs at least two samples (have " +
                        std::to_string(by_class[0].size()) + " and " +
                        std::to_string(by_class[1].size()) + ")");
    }

    std::vector<Split> splits;
    for (int b = 0; b < n_batches; ++b) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(b)));
        std::vector<int> train[2];
        std::vector<int> test[2];
        for (int c = 0; c < 2; ++c) {
            std::vector<int> members = by_class[c];
            rng.shuffle(std::span<int>(members));
            const auto n = static_cast<long>(members.size());
            const long n_test =
                std::clamp(std::lround(static_cast<double>(n) * test_fraction), 1L, n - 1);
            test[c].assign(members.begin(), members.begin() + n_test);
            train[c].assign(members.begin() + n_test, members.end());
        }
        if (balance) {
            for (auto *part : {train, test}) {
                const int major = part[0].size() >= part[1].size() ? 0 : 1;
                const std::size_t keep = part[1 - major].size();
                rng.shuffle(std::span<int>(part[major]));
                part[major].resize(keep);
            }
        }
        Split s;
        s.train = train[0];
        s.train.insert(s.train.end(), train[1].begin(), train[1].end());
        s.test = test[0];
        s.test.insert(s.test.end(), test[1].begin(), test[1].end());
        std::sort(s.train.begin(), s.train.end());
        std::sort(s.test.begin(), s.test.end());
        splits.push_back(std::move(s));
    }
    return splits;
}

void write_batch_manifest(const std::vector<Split> &splits, std::uint64_t seed, std::ostream &out) {
    nlohmann::json j;
    j["seed"] = seed;
    auto &batches = j["batches"] = nlohmann::json::array();
    for (std::size_t b = 0; b < splits.size(); ++b) {
        batches.push_back({{"index", b}, {"train", splits[b].train}, {"test", splits[b].test}});
    }
    out << j.dump() << '\n';
}

Dataset synthetic_planted(int d, int p, int k_informative, double noise_sd, std::uint64_t seed) {
    if (d < 4) {
        throw ParameterError("synthetic_planted: d must be at least 4");
    }
    if (p < 1 || k_informative < 1 || k_informative > p) {
        throw ParameterError("synthetic_planted: require 1 <= k_informative <= p");
    }
    if (!(noise_sd >= 0.0)) {
        throw ParameterError("synthetic_planted: noise_sd must be non-negative");
    }
    Rng rng(seed);
    std::vector<int> columns(static_cast<std::size_t>(p));
    std::iota(columns.begin(), columns.end(), 0);
    rng.shuffle(std::span<int>(columns));
    std::vector<int> informative(columns.begin(), columns.begin() + k_informative);
    std::sort(informative.begin(), informative.end());

    std::vector<double> beta(static_cast<std::size_t>(p), 0.0);
    const double magnitude = 2.0 / std::sqrt(static_cast<double>(k_informative));
    for (std::size_t j = 0; j < informative.size(); ++j) {
        beta[static_cast<std::size_t>(informative[j])] = j % 2 == 0 ? magnitude : -magnitude;
    }

    Dataset ds;
    ds.features.resize(d, p);
    ds.labels.resize(static_cast<std::size_t>(d));
    ds.informative = informative;
    for (int j = 0; j < p; ++j) {
        ds.feature_names.push_back("f" + std::to_string(j));
    }
    for (int i = 0; i < d; ++i) {
        double s = 0.0;
        for (int j = 0; j < p; ++j) {
            const double v = rng.normal();
            ds.features(i, j) = v;
            s += beta[static_cast<std::size_t>(j)] * v;
        }
        s += noise_sd * rng.normal();
        const double prob = 1.0 / (1.0 + std::exp(-s));
        ds.labels[static_cast<std::size_t>(i)] = rng.uniform() < prob ? 1 : 0;
    }
    return ds;
}

} // namespace qfeo::data
