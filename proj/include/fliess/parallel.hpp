// Copyright 2026 The fliess-kit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Minimal index-parallel map used by the sampling experiments. Results are
// returned in index order, so output does not depend on the schedule.

#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace fliess {

namespace detail {

inline int& thread_limit_ref() {
    static int n = 1;
    return n;
}

}  // namespace detail

/// Caps the number of worker threads (1 = run inline).
inline void set_thread_limit(int n) { detail::thread_limit_ref() = std::max(1, n); }
inline int thread_limit() { return detail::thread_limit_ref(); }

template <class F>
auto parallel_map(std::size_t n, F&& f) -> std::vector<decltype(f(std::size_t{}))> {
    using T = decltype(f(std::size_t{}));
    std::vector<std::optional<T>> slots(n);
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(thread_limit()), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) slots[i].emplace(f(i));
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr error;
        std::mutex error_mutex;
        auto work = [&] {
            for (std::size_t i; (i = next.fetch_add(1)) < n;) {
                try {
                    slots[i].emplace(f(i));
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        };
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
        if (error) std::rethrow_exception(error);
    }
    std::vector<T> out;
    out.reserve(n);
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

}  // namespace fliess
