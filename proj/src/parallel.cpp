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
#include "qfeo/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>
#include <vector>

namespace qfeo {

namespace {

std::atomic<int> g_total{1};
std::atomic<int> g_spare{0};

int acquire(int wanted) {
    int got = 0;
    int available = g_spare.load();
    while (wanted > 0 && available > 0) {
        const int take = std::min(wanted, available);
        if (g_spare.compare_exchange_weak(available, available - take)) {
            got = take;
            break;
        }
    }
    return got;
}

} // namespace

void set_worker_count(int workers) {
    workers = std::max(1, workers);
    g_total = workers;
    g_spare = workers - 1;
}

int worker_count() { return g_total.load(); }

void parallel_for(std::size_t n, const std::function<void(std::size_t)> &body) {
    if (n == 0) {
        return;
    }
    const int wanted = static_cast<int>(std::min<std::size_t>(n - 1, 1024));
    const int extra = acquire(wanted);

    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::size_t error_index = std::numeric_limits<std::size_t>::max();
    std::exception_ptr error;

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) {
                return;
            }
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (i < error_index) {
                    error_index = i;
                    error = std::current_exception();
                }
            }
        }
    };

    std::vector<std::jthread> threads;
    threads.reserve(static_cast<std::size_t>(extra));
    for (int t = 0; t < extra; ++t) {
        threads.emplace_back(worker);
    }
    worker();
    threads.clear(); // joins
    g_spare += extra;

    if (error) {
        std::rethrow_exception(error);
    }
}

} // namespace qfeo
