#pragma once

#include <cstddef>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace uu {

// Runs fn(i) for i in [0, count) on up to hardware_concurrency() threads.
// Callers make the work order-independent (each index gets its own derived
// seed and writes its own result slot). The first exception, if any, is
// rethrown on the calling thread after all workers finish.
template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn) {
    std::size_t workers = std::thread::hardware_concurrency();
    if (workers < 2 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    if (workers > count) workers = count;

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        threads.emplace_back([&] {
            try {
                for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    if (error) std::rethrow_exception(error);
}

} // namespace uu
