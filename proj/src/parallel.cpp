#include "eigedge/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace eigedge {

int thread_count() {
    int n = 0;
    if (const char* env = std::getenv("EIGEDGE_THREADS")) {
        try {
            n = std::stoi(env);
        } catch (...) {
            n = 0;
        }
    }
    if (n <= 0) {
        n = static_cast<int>(std::thread::hardware_concurrency());
    }
    return std::max(1, n);
}

void parallel_for(size_t n, const std::function<void(size_t, size_t)>& fn) {
    const int workers = thread_count();
    if (workers == 1 || n < 2) {
        fn(0, n);
        return;
    }
    const size_t chunks = std::min<size_t>(workers, n);
    const size_t step = (n + chunks - 1) / chunks;
    std::vector<std::thread> pool;
    pool.reserve(chunks - 1);
    for (size_t c = 1; c < chunks; ++c) {
        const size_t begin = c * step;
        const size_t end = std::min(n, begin + step);
        if (begin >= end) break;
        pool.emplace_back([&fn, begin, end] { fn(begin, end); });
    }
    fn(0, std::min(n, step));
    for (auto& t : pool) t.join();
}

} // namespace eigedge
