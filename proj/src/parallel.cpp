#include "sphdpp/parallel.hpp"

namespace sphdpp {

namespace {
std::atomic<int> g_threads{0}; // 0: use hardware concurrency
}

int thread_count() {
    const int configured = g_threads.load();
    if (configured > 0) return configured;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

void set_thread_count(int n) { g_threads.store(n > 0 ? n : 0); }

} // namespace sphdpp
