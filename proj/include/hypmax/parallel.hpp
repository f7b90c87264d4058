#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace hypmax {

// Thread budget: HYPMAX_THREADS caps parallelism, default hardware concurrency.
inline unsigned thread_budget() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("HYPMAX_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return std::min<unsigned>(hw, static_cast<unsigned>(v));
    }
    return hw;
}

// Runs fn(i) for i in [0, count). Results must be written by index so the
// outcome is identical for any thread count.
inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
    unsigned nthreads = std::min<std::size_t>(thread_budget(), count);
    if (nthreads <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    std::size_t chunk = (count + nthreads - 1) / nthreads;
    for (unsigned k = 0; k < nthreads; ++k) {
        std::size_t lo = k * chunk, hi = std::min(count, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace hypmax
