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

#include <sstream>
#include <string>

namespace qfeo::log {

enum class Level { Error = 0, Warn = 1, Info = 2, Debug = 3 };

/// Verbosity comes from the QFEO_LOG environment variable
/// (error|warn|info|debug, default warn) unless overridden.
Level level();
void set_level(Level lvl);
void write(Level lvl, const std::string &message);

template <typename... Args> void emit(Level lvl, const Args &...args) {
    if (static_cast<int>(lvl) > static_cast<int>(level())) {
        return;
    }
    std::ostringstream os;
    (os << ... << args);
    write(lvl, os.str());
}

template <typename... Args> void warn(const Args &...args) {
    emit(Level::Warn, args...);
}
template <typename... Args> void info(const Args &...args) {
    emit(Level::Info, args...);
}
template <typename... Args> void debug(const Args &...args) {
    emit(Level::Debug, args...);
}

} // namespace qfeo::log
