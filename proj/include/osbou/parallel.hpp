#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace osbou {

/// Worker count: hardware concurrency, capped by OSB_OU_THREADS when set.
std::size_t worker_count();

/// Calls f(i) for i in [0, n) on up to worker_count() threads. Work is split
/// into contiguous blocks; f must only write to per-index state.
template <class F>
void parallel_for(std::size_t n, F&& f) {
    const std::size_t workers = std::min(worker_count(), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    const std::size_t block = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t lo = w * block;
        const std::size_t hi = std::min(n, lo + block);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &f] {
            for (std::size_t i = lo; i < hi; ++i) f(i);
        });
    }
}

}  // namespace osbou
