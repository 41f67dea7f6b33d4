#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace raqmod {

// Compensated (Neumaier) accumulator.  value() = sum + compensation.
struct KahanSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double x)
    {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

// Sum of parts[lo, hi) by recursive halving; the tree depends only on the size.
inline double pairwise_sum(const std::vector<double>& parts, std::size_t lo, std::size_t hi)
{
    if (hi <= lo)
        return 0.0;
    if (hi - lo == 1)
        return parts[lo];
    const std::size_t mid = lo + (hi - lo) / 2;
    return pairwise_sum(parts, lo, mid) + pairwise_sum(parts, mid, hi);
}
inline double pairwise_sum(const std::vector<double>& parts) { return pairwise_sum(parts, 0, parts.size()); }

inline int default_jobs()
{
    const unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : static_cast<int>(n);
}

// Runs body(i) for i in [0, n) on up to `jobs` threads.  Each index is
// processed exactly once; the first exception is rethrown on the caller.
inline void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& body)
{
    const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(jobs, 1)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    auto run = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mu);
                if (!error)
                    error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < workers; ++t)
        pool.emplace_back(run);
    for (auto& t : pool)
        t.join();
    if (error)
        std::rethrow_exception(error);
}

} // namespace raqmod
