#ifndef BPI_PARALLEL_HPP
#define BPI_PARALLEL_HPP

#include <atomic>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace bpi {

// Worker count: BPI_WORKERS environment override, else hardware concurrency.
inline int default_workers() {
    if (const char* env = std::getenv("BPI_WORKERS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

// Runs fn(0..n-1) across workers threads. Tasks must be independent; each
// writes only its own output slot, so results do not depend on scheduling.
inline void parallel_for(int n, int workers, const std::function<void(int)>& fn) {
    if (n <= 0) return;
    if (workers <= 0) workers = default_workers();
    if (workers == 1 || n == 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                next.store(n);  // drain remaining work
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    const int count = std::min(workers, n);
    pool.reserve(count);
    for (int i = 0; i < count; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

} // namespace bpi

#endif
