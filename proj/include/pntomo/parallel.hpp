#pragma once

#include <atomic>
#include <cstdlib>
#include <span>
#include <thread>
#include <vector>

namespace pntomo {

/// Worker cap: TOMO_THREADS env var when set, hardware concurrency otherwise.
inline int max_threads() {
    if (const char* env = std::getenv("TOMO_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

/// Runs fn(i) for every i in [0, count). Work items are claimed through an
/// atomic counter; callers must store results by index so that the final
/// combination order is independent of scheduling.
template <class Fn>
void parallel_for_index(std::size_t count, Fn&& fn) {
    int workers = max_threads();
    if (workers <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    int spawn = static_cast<int>(std::min<std::size_t>(count, static_cast<std::size_t>(workers)));
    pool.reserve(spawn);
    for (int t = 0; t < spawn; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

/// Index-ordered pairwise summation; the result depends only on the input
/// order, never on thread count.
inline double pairwise_sum(std::span<const double> xs) {
    if (xs.size() <= 8) {
        double s = 0.0;
        for (double x : xs) s += x;
        return s;
    }
    std::size_t half = xs.size() / 2;
    return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

/// Pairwise reduction of equally sized partial-sum vectors (slice results of a
/// parallel sweep) into a single vector, combining in slice order.
inline std::vector<double> pairwise_combine(std::vector<std::vector<double>> parts) {
    if (parts.empty()) return {};
    while (parts.size() > 1) {
        std::vector<std::vector<double>> next;
        next.reserve((parts.size() + 1) / 2);
        for (std::size_t i = 0; i + 1 < parts.size(); i += 2) {
            auto merged = std::move(parts[i]);
            const auto& other = parts[i + 1];
            for (std::size_t k = 0; k < merged.size(); ++k) merged[k] += other[k];
            next.push_back(std::move(merged));
        }
        if (parts.size() % 2 == 1) next.push_back(std::move(parts.back()));
        parts = std::move(next);
    }
    return std::move(parts.front());
}

}  // namespace pntomo
