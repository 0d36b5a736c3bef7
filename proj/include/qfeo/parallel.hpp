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

#include <cstddef>
#include <functional>

namespace qfeo {

/// Caps the total number of threads used by every parallel_for in the
/// process, including nested calls. The calling thread counts as one worker.
void set_worker_count(int workers);
int worker_count();

/// Runs body(i) for i in [0, n). Extra threads are borrowed from the global
/// budget when available, otherwise the loop runs inline. Results must be
/// written by index so output never depends on the schedule. If several
/// iterations throw, the exception of the lowest index is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)> &body);

} // namespace qfeo
