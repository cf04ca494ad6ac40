#pragma once

// Deterministic parallel helpers: an indexed parallel_for whose results
// are written by index, and a pairwise tree reduction whose summation
// order is fixed by the tree shape, not by thread timing.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace hardylab {

inline unsigned& worker_cap() {
    static unsigned cap = std::max(1u, std::min(std::thread::hardware_concurrency(), 8u));
    return cap;
}

inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    const unsigned workers = std::min<unsigned>(worker_cap(), unsigned(std::max<std::size_t>(n, 1)));
    if (workers <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t lo = std::size_t(w) * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &body] {
            for (std::size_t i = lo; i < hi; ++i) body(i);
        });
    }
    for (auto& t : pool) t.join();
}

inline double pairwise_sum(std::vector<double> terms) {
    if (terms.empty()) return 0.0;
    std::size_t len = terms.size();
    while (len > 1) {
        const std::size_t half = len / 2;
        for (std::size_t i = 0; i < half; ++i) terms[i] = terms[2 * i] + terms[2 * i + 1];
        if (len % 2) terms[half] = terms[len - 1];
        len = half + (len % 2);
    }
    return terms[0];
}

}  // namespace hardylab
