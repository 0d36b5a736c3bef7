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
#include "qfeo/log.hpp"

#include <atomic>
#include <cstdlib>
#include <iostream>
#include <mutex>
#include <string_view>

namespace qfeo::log {

namespace {

Level from_env() {
    const char *raw = std::getenv("QFEO_LOG");
    if (raw == nullptr) {
        return Level::Warn;
    }
    const std::string_view v(raw);
    if (v == "error") {
        return Level::Error;
    }
    if (v == "info") {
        return Level::Info;
    }
    if (v == "debug") {
        return Level::Debug;
    }
    return Level::Warn;
}

std::atomic<int> &current() {
    static std::atomic<int> lvl{static_cast<int>(from_env())};
    return lvl;
}

std::mutex g_mutex;

constexpr std::string_view tag(Level lvl) {
    switch (lvl) {
    case Level::Error:
        return "error";
    case Level::Warn:
        return "warn";
    case Level::Info:
        return "info";
    case Level::Debug:
        return "debug";
    }
    return "?";
}

} // namespace

Level level() { return static_cast<Level>(current().load()); }

void set_level(Level lvl) { current() = static_cast<int>(lvl); }

void write(Level lvl, const std::string &message) {
    std::lock_guard lock(g_mutex);
    std::cerr << "[qfeo " << tag(lvl) << "] " << message << '\n';
}

} // namespace qfeo::log
