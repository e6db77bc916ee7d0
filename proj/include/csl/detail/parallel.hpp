#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace csl::detail {

/// Fixed chunk length for reductions. Partial results are combined in chunk
/// order, so sums are bit-stable whatever the worker count.
inline constexpr std::size_t kChunk = std::size_t{1} << 15;

inline std::size_t chunk_count(std::size_t n) noexcept { return (n + kChunk - 1) / kChunk; }

inline unsigned worker_count(std::size_t tasks) noexcept {
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    return static_cast<unsigned>(std::min<std::size_t>(hw, std::max<std::size_t>(tasks, 1)));
}

/// Runs f(task) for task in [0, tasks) on a pool of worker threads.
template <class F> void parallel_tasks(std::size_t tasks, F &&f) {
    const unsigned workers = worker_count(tasks);
    if (workers <= 1) {
        for (std::size_t t = 0; t < tasks; ++t)
            f(t);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t t; (t = next.fetch_add(1)) < tasks;) {
                try {
                    f(t);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error)
                        error = std::current_exception();
                }
            }
        });
    }
    for (auto &th : pool)
        th.join();
    if (error)
        std::rethrow_exception(error);
}

/// f(begin, end) over fixed-size chunks of [0, n).
template <class F> void parallel_chunks(std::size_t n, F &&f) {
    parallel_tasks(chunk_count(n), [&](std::size_t c) {
        const std::size_t begin = c * kChunk;
        f(c, begin, std::min(n, begin + kChunk));
    });
}

/// Deterministic chunked reduction: partial(begin, end) -> T, summed in order.
template <class T, class F> T chunked_sum(std::size_t n, F &&partial) {
    std::vector<T> parts(chunk_count(n), T{});
    parallel_chunks(n, [&](std::size_t c, std::size_t b, std::size_t e) { parts[c] = partial(b, e); });
    T total{};
    for (const auto &p : parts)
        total += p;
    return total;
}

} // namespace csl::detail
