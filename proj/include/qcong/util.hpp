#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace qcong {

/// Applies fn(i) for i in [0, count) on up to `parallelism` threads
/// (0 = hardware concurrency) and returns the results indexed by i, so output
/// order never depends on scheduling. The first exception, if any, is
/// rethrown on the caller's thread.
template <typename R, typename Fn>
std::vector<R> parallel_map(std::size_t count, unsigned parallelism, Fn&& fn) {
    if (parallelism == 0) parallelism = std::max(1u, std::thread::hardware_concurrency());

    std::vector<R> results(count);
    if (count == 0) return results;

    if (parallelism == 1 || count == 1) {
        for (std::size_t i = 0; i < count; ++i) results[i] = fn(i);
        return results;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::once_flag failed_once;

    auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                results[i] = fn(i);
            } catch (...) {
                std::call_once(failed_once, [&] { failure = std::current_exception(); });
                return;
            }
        }
    };

    std::vector<std::thread> threads;
    const std::size_t nthreads = std::min<std::size_t>(parallelism, count);
    threads.reserve(nthreads);
    for (std::size_t t = 0; t < nthreads; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();

    if (failure) std::rethrow_exception(failure);
    return results;
}

}  // namespace qcong
