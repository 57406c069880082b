#pragma once

#include <cstddef>
#include <cstdlib>
#include <thread>
#include <vector>

namespace compass {

/// Worker count: explicit request, else COMPASS_THREADS, else hardware.
inline int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("COMPASS_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

/// Apply fn(i) for i in [0, n) on a contiguous-chunk worker pool. Each index
/// is computed independently, so results are identical for any worker count.
template <typename Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
    const int t = resolve_threads(threads);
    if (t <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(t), n);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace compass
