#pragma once

// Static chunking over an index range with std::thread. Each worker gets a
// contiguous block, so per-worker partial results can be reduced in a fixed
// order and outputs do not depend on the thread count.

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace bsc {

/// BSC_THREADS if set, else the hardware concurrency (at least 1).
int default_thread_count();

/// Calls body(worker, begin, end) on [0, n) split into at most `threads`
/// contiguous blocks. The first exception thrown by a worker is rethrown.
template <typename Body>
void parallel_blocks(std::size_t n, int threads, Body&& body)
{
    const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(threads < 1 ? 1 : threads, n));
    if (workers == 1) {
        body(std::size_t{0}, std::size_t{0}, n);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = std::min(n, w * chunk);
        const std::size_t end = std::min(n, begin + chunk);
        pool.emplace_back([&, w, begin, end] {
            try {
                body(w, begin, end);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

/// Number of blocks parallel_blocks will use for n items.
inline std::size_t block_count(std::size_t n, int threads)
{
    return std::max<std::size_t>(1, std::min<std::size_t>(threads < 1 ? 1 : threads, n));
}

template <typename Body>
void parallel_for(std::size_t n, int threads, Body&& body)
{
    parallel_blocks(n, threads, [&](std::size_t, std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) body(i);
    });
}

}  // namespace bsc
