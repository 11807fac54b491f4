#pragma once

#include <cstdlib>
#include <thread>
#include <vector>

namespace tytan {

// Worker budget for internal parallelism. TYTAN_THREADS caps it; 0 or unset
// means one worker per hardware thread.
inline unsigned thread_budget() {
    static const unsigned cached = [] {
        if (const char* env = std::getenv("TYTAN_THREADS")) {
            const long v = std::strtol(env, nullptr, 10);
            if (v > 0) return static_cast<unsigned>(v);
        }
        const unsigned hw = std::thread::hardware_concurrency();
        return hw == 0 ? 1u : hw;
    }();
    return cached;
}

// Runs fn(i) for every i in [0, count), split into contiguous chunks across
// worker threads. Each index is visited exactly once and callers do any
// cross-index reduction themselves, so results cannot depend on the thread
// count or scheduling.
template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn) {
    const std::size_t workers =
        std::min<std::size_t>(thread_budget(), count == 0 ? 1 : count);
    if (workers <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (count + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(count, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace tytan
