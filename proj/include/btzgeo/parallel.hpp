#ifndef BTZGEO_PARALLEL_HPP
#define BTZGEO_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace btz {

/// Index-parallel loop with deterministic work assignment (results must be
/// written to per-index slots or merged commutatively).
template <class F>
void parallel_for(long n, F&& body) {
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned n_threads = static_cast<unsigned>(std::min<long>(hw, std::max<long>(1, n / 256)));
    if (n_threads <= 1) {
        for (long i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<long> next{0};
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (unsigned t = 0; t < n_threads; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const long start = next.fetch_add(64);
                if (start >= n) break;
                const long stop = std::min(n, start + 64);
                for (long i = start; i < stop; ++i) body(i);
            }
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace btz

#endif
