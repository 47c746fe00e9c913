#pragma once

// Bounded worker pool for independent tasks. Results come back in task order
// whatever the completion order, so reports do not depend on scheduling.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace degwave {

/// Runs fn(i) for i in [0, count) on at most `workers` threads (0 means the
/// hardware concurrency). The first exception thrown by a task is rethrown
/// after all workers have stopped.
template <class Fn>
auto parallel_map(std::size_t count, std::size_t workers, Fn&& fn) -> std::vector<decltype(fn(std::size_t{}))> {
    using Result = decltype(fn(std::size_t{}));
    std::vector<std::optional<Result>> slots(count);
    if (workers == 0) {
        workers = std::max(1u, std::thread::hardware_concurrency());
    }
    workers = std::min(workers, std::max<std::size_t>(count, 1));

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto work = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count || failed.load()) {
                return;
            }
            try {
                slots[i].emplace(fn(i));
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                }
                failed.store(true);
            }
        }
    };

    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back(work);
        }
        for (auto& t : pool) {
            t.join();
        }
    }
    if (error) {
        std::rethrow_exception(error);
    }
    std::vector<Result> out;
    out.reserve(count);
    for (auto& s : slots) {
        out.push_back(std::move(*s));
    }
    return out;
}

} // namespace degwave
