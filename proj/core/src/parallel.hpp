#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace smotfs::detail {

/// Runs fn(i) for i in [begin, end) on up to `workers` threads. The first
/// exception thrown by any task is rethrown on the caller's thread.
template <typename Fn>
void parallel_for(std::uint64_t begin, std::uint64_t end, unsigned workers, Fn&& fn) {
    if (end <= begin) return;
    const auto n = end - begin;
    const unsigned threads = static_cast<unsigned>(std::min<std::uint64_t>(std::max(1u, workers), n));
    if (threads == 1) {
        for (auto i = begin; i < end; ++i) fn(i);
        return;
    }
    std::atomic<std::uint64_t> next{begin};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto body = [&] {
        for (auto i = next.fetch_add(1); i < end; i = next.fetch_add(1)) {
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                next.store(end);
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads - 1);
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(body);
    body();
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace smotfs::detail
