#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace swl {

// Static block partition over [0, count). Each index is processed exactly
// once and results land in caller-owned slots, so reductions stay
// deterministic regardless of thread count.
inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body,
                         std::size_t n_threads = 0) {
    if (n_threads == 0) n_threads = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    n_threads = std::min(n_threads, count ? count : 1);
    if (n_threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    const std::size_t chunk = (count + n_threads - 1) / n_threads;
    for (std::size_t t = 0; t < n_threads; ++t) {
        const std::size_t lo = t * chunk;
        const std::size_t hi = std::min(lo + chunk, count);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &body] {
            for (std::size_t i = lo; i < hi; ++i) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace swl
