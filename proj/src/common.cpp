#include "shortvar/common.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>

namespace shortvar {

int thread_count() {
    if (const char* env = std::getenv("SHORTVAR_THREADS")) {
        int t = std::atoi(env);
        if (t >= 1) return t;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for_index(u64 n, int threads, const std::function<void(u64)>& fn) {
    if (n == 0) return;
    int t = std::max(1, threads);
    if (t == 1 || n == 1) {
        for (u64 i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<u64> next{0};
    auto worker = [&]() {
        for (;;) {
            u64 i = next.fetch_add(1);
            if (i >= n) return;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    int spawn = static_cast<int>(std::min<u64>(t, n));
    pool.reserve(spawn);
    for (int i = 0; i < spawn; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

}  // namespace shortvar
