#ifndef SPHDPP_PARALLEL_HPP
#define SPHDPP_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace sphdpp {

/// Global worker count for Monte Carlo trials and pairwise sums.
/// All parallel reductions in the library merge partial results in a fixed
/// order, so numerical output never depends on this setting.
int thread_count();
void set_thread_count(int n);

/// Runs f(i) for i in [0, count). Tasks are claimed from an atomic counter;
/// f must only write to task-indexed slots. Rethrows the first exception.
template <typename F>
void parallel_for(std::size_t count, F&& f) {
    const int workers = thread_count();
    if (workers <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    const std::size_t spawn = std::min<std::size_t>(static_cast<std::size_t>(workers), count);
    for (std::size_t w = 0; w < spawn; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count || failed.load()) return;
                try {
                    f(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    failed.store(true);
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

} // namespace sphdpp

#endif
