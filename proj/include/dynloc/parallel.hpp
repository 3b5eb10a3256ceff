#ifndef DYNLOC_PARALLEL_HPP
#define DYNLOC_PARALLEL_HPP

// Deterministic fork-join helpers. Work items write to preallocated,
// index-addressed slots and every reduction runs serially afterwards in
// a fixed (pairwise) order, so results do not depend on the thread count.

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace dynloc {

inline int resolve_threads(int requested) {
    if (requested > 0)
        return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// fn(i) for i in [0, n); block partition over `threads` workers.
template <typename Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
    const int nt = resolve_threads(threads);
    if (nt <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(nt), n);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::vector<std::exception_ptr> errors(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t lo = n * w / workers;
        const std::size_t hi = n * (w + 1) / workers;
        pool.emplace_back([&, lo, hi, w] {
            try {
                for (std::size_t i = lo; i < hi; ++i)
                    fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool)
        t.join();
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
}

// Pairwise summation; deterministic and accurate for long accumulations.
inline double pairwise_sum(const double* v, std::size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            s += v[i];
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(v, half) + pairwise_sum(v + half, n - half);
}

inline double pairwise_sum(const std::vector<double>& v) {
    return pairwise_sum(v.data(), v.size());
}

// Pairwise sum of f(i) over i in [0, n) without materializing the array.
template <typename F>
double pairwise_sum_indexed(std::size_t begin, std::size_t end, F&& f) {
    const std::size_t n = end - begin;
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = begin; i < end; ++i)
            s += f(i);
        return s;
    }
    const std::size_t mid = begin + n / 2;
    return pairwise_sum_indexed(begin, mid, f) + pairwise_sum_indexed(mid, end, f);
}

}  // namespace dynloc

#endif
