#include "martdim/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace martdim::parallel {

namespace {
std::atomic<int> g_threads{0};

int hardware_threads() {
    const unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : static_cast<int>(n);
}
}  // namespace

void set_thread_count(int n) { g_threads.store(n < 0 ? 0 : n); }

int thread_count() {
    const int n = g_threads.load();
    return n == 0 ? hardware_threads() : n;
}

void for_each_index(std::int64_t count, const std::function<void(std::int64_t)>& fn) {
    if (count <= 0) return;
    const int workers = static_cast<int>(std::min<std::int64_t>(thread_count(), count));
    if (workers <= 1) {
        for (std::int64_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::int64_t chunk = (count + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const std::int64_t lo = w * chunk;
        const std::int64_t hi = std::min(count, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&fn, lo, hi] {
            for (std::int64_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace martdim::parallel
