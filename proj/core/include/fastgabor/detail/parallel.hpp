#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "fastgabor/counters.hpp"

namespace fastgabor::detail {

/// Runs fn(index, counters) for index in [0, count) on up to `threads`
/// workers. Each worker owns its counters; they are merged into `total`
/// after the join, so totals do not depend on the schedule.
template <class Fn>
void parallel_for(std::size_t count, unsigned threads, OpCounters& total, Fn&& fn) {
    const std::size_t workers = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(count, 1));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i, total);
        return;
    }
    std::vector<OpCounters> local(workers);
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t i = next++; i < count; i = next++) fn(i, local[w]);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            });
        }
    }
    if (error) std::rethrow_exception(error);
    for (const auto& c : local) total += c;
}

}  // namespace fastgabor::detail
