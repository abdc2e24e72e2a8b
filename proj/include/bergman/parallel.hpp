#pragma once

// Deterministic parallel reduction helpers.  Work is split into fixed-size
// chunks whose partial results are combined in chunk order, so the result is
// byte-identical regardless of the number of worker threads (controlled by
// the BERGMAN_THREADS environment variable; default: hardware concurrency).

#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace bergman {

inline unsigned thread_count() {
    if (const char* env = std::getenv("BERGMAN_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? hc : 1u;
}

// Evaluates chunk_fn(begin, end) for consecutive chunks of [0, n) and sums
// the partial results in chunk order.  chunk_fn must be pure.
template <typename T, typename F>
T parallel_reduce_chunked(std::size_t n, F&& chunk_fn, T zero,
                          std::size_t chunk = 8192) {
    if (n == 0) return zero;
    const std::size_t nchunks = (n + chunk - 1) / chunk;
    std::vector<T> partial(nchunks, zero);

    unsigned nthreads = thread_count();
    if (nthreads <= 1 || nchunks == 1) {
        for (std::size_t c = 0; c < nchunks; ++c)
            partial[c] = chunk_fn(c * chunk, std::min(n, (c + 1) * chunk));
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (;;) {
                std::size_t c = next.fetch_add(1);
                if (c >= nchunks) break;
                partial[c] = chunk_fn(c * chunk, std::min(n, (c + 1) * chunk));
            }
        };
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    T s = zero;
    for (const T& p : partial) s += p;  // fixed order => deterministic
    return s;
}

template <typename F>
double parallel_sum_chunked(std::size_t n, F&& chunk_fn,
                            std::size_t chunk = 8192) {
    return parallel_reduce_chunked<double>(n, std::forward<F>(chunk_fn), 0.0,
                                           chunk);
}

// Plain parallel for over [0, n) with the same chunking discipline (no
// reduction; body must write to disjoint locations).
template <typename F>
void parallel_for_chunked(std::size_t n, F&& body, std::size_t chunk = 1024) {
    if (n == 0) return;
    const std::size_t nchunks = (n + chunk - 1) / chunk;
    unsigned nthreads = thread_count();
    if (nthreads <= 1 || nchunks == 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t c = next.fetch_add(1);
            if (c >= nchunks) break;
            const std::size_t hi = std::min(n, (c + 1) * chunk);
            for (std::size_t i = c * chunk; i < hi; ++i) body(i);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

}  // namespace bergman
