#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace hypgrpd {

inline unsigned worker_count() {
    if (const char* env = std::getenv("HYPGRPD_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1 && v <= 256) return static_cast<unsigned>(v);
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? hc : 1;
}

// chunked parallel loop over [0, n); fn must only touch per-index state
inline void parallel_for(long long n, const std::function<void(long long, long long)>& fn) {
    unsigned w = worker_count();
    if (w <= 1 || n < 256) {
        fn(0, n);
        return;
    }
    std::vector<std::thread> ts;
    long long chunk = (n + w - 1) / w;
    for (unsigned i = 0; i < w; ++i) {
        long long lo = static_cast<long long>(i) * chunk;
        long long hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        ts.emplace_back(fn, lo, hi);
    }
    for (auto& t : ts) t.join();
}

}  // namespace hypgrpd
