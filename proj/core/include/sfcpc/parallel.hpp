#ifndef SFCPC_PARALLEL_HPP
#define SFCPC_PARALLEL_HPP

#include <algorithm>
#include <cstddef>
#include <thread>
#include <utility>
#include <vector>

namespace sfcpc {

inline unsigned default_threads() {
    const unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1u : n;
}

/// Runs fn(begin, end) over disjoint chunks of [0, n). With threads <= 1 or
/// a small n the call is inline on the current thread. Output determinism is
/// the callee's business: write to disjoint slots and results are identical
/// for any thread count.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
    if (n == 0) return;
    const std::size_t workers = std::min<std::size_t>(threads == 0 ? 1 : threads, n);
    if (workers <= 1 || n < 2048) {
        fn(std::size_t{0}, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&fn, begin, end] { fn(begin, end); });
    }
    for (auto& t : pool) t.join();
}

}  // namespace sfcpc

#endif
