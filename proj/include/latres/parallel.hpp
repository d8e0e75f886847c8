#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace latres::util {

// Runs body(i) for i in [0, count) across up to max_threads workers.
// max_threads <= 1 runs inline.  Callers own result storage; bodies must not
// share mutable state.
inline void parallel_for(std::size_t count, std::size_t max_threads,
                         const std::function<void(std::size_t)>& body) {
    if (count == 0) return;
    std::size_t workers = max_threads == 0 ? std::thread::hardware_concurrency() : max_threads;
    if (workers > count) workers = count;
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < count; i += workers) body(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace latres::util
