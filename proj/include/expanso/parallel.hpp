// Deterministic parallel-for: static chunking into preallocated slots, so
// results are identical for any worker count. EXPANSO_THREADS caps workers.
#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace expanso {

inline int resolve_workers(int requested = 0) {
    int n = requested;
    if (n <= 0) {
        if (const char* env = std::getenv("EXPANSO_THREADS")) {
            n = std::atoi(env);
        }
    }
    if (n <= 0) n = static_cast<int>(std::thread::hardware_concurrency());
    if (n <= 0) n = 1;
    return n;
}

// fn(i) must only write to state owned by index i.
inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn,
                         int workers = 0) {
    const int w = resolve_workers(workers);
    if (w == 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    const std::size_t nw = std::min<std::size_t>(static_cast<std::size_t>(w), count);
    std::vector<std::thread> pool;
    pool.reserve(nw);
    for (std::size_t t = 0; t < nw; ++t) {
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < count; i += nw) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace expanso
