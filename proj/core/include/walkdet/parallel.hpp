#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace walkdet {

// Runs fn(i) for i in [0, count) across `threads` workers (0 = hardware
// concurrency). Each index is independent and writes only its own slot, so
// results are identical for any worker count.
inline void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
    unsigned n = threads > 0 ? static_cast<unsigned>(threads) : std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    n = static_cast<unsigned>(std::min<std::size_t>(n, count));
    if (n <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    workers.reserve(n);
    for (unsigned w = 0; w < n; ++w)
        workers.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
        });
    for (auto& th : workers) th.join();
}

// Pairwise (cascade) summation: order-insensitive to how the values were
// produced and reproducible across runs.
inline double pairwise_sum(const double* data, std::size_t count) {
    if (count == 0) return 0.0;
    if (count <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < count; ++i) s += data[i];
        return s;
    }
    const std::size_t half = count / 2;
    return pairwise_sum(data, half) + pairwise_sum(data + half, count - half);
}

}  // namespace walkdet
