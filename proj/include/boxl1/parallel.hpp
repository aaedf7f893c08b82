#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace boxl1 {

// Worker count: hardware concurrency, overridable (and cappable) through the
// THREADS environment variable.
inline unsigned worker_count() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v >= 1)
            hw = static_cast<unsigned>(std::min(v, 256L));
    }
    return hw;
}

// Runs fn(i) for every i in [0, count), pulling indices from a shared atomic
// counter. Callers get deterministic results by writing into preallocated
// per-index slots and reducing in index order afterwards. The first exception
// thrown by any worker is rethrown on the calling thread.
inline void parallel_for_index(std::size_t count, const std::function<void(std::size_t)>& fn) {
    if (count == 0) return;
    const unsigned workers = std::min<std::size_t>(worker_count(), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex error_mu;
    auto body = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= count || failed.load(std::memory_order_relaxed)) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mu);
                if (!first_error) first_error = std::current_exception();
                failed.store(true, std::memory_order_relaxed);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace boxl1
