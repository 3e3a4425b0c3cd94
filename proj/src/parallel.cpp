#include "restdig/parallel.hpp"

#include <atomic>
#include <thread>

namespace restdig {

namespace {
std::atomic<int> g_workers{0};
}

void set_worker_count(int n) { g_workers.store(n < 0 ? 0 : n); }

int worker_count() {
    int n = g_workers.load();
    if (n <= 0) {
        unsigned hc = std::thread::hardware_concurrency();
        n = hc == 0 ? 1 : static_cast<int>(hc);
    }
    return n;
}

namespace detail {

void run_blocks(int64_t nblocks, const std::function<void(int64_t)>& fn) {
    const int workers = worker_count();
    if (workers <= 1 || nblocks <= 1) {
        for (int64_t i = 0; i < nblocks; ++i) fn(i);
        return;
    }
    std::atomic<int64_t> next{0};
    auto body = [&] {
        for (;;) {
            const int64_t i = next.fetch_add(1);
            if (i >= nblocks) break;
            fn(i);
        }
    };
    const int nthreads = static_cast<int>(std::min<int64_t>(workers, nblocks));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(nthreads) - 1);
    for (int t = 1; t < nthreads; ++t) pool.emplace_back(body);
    body();
    for (auto& th : pool) th.join();
}

}  // namespace detail

namespace {

template <class T>
T pairwise_impl(std::span<const T> xs) {
    if (xs.empty()) return T{};
    if (xs.size() <= 8) {
        T acc = xs[0];
        for (size_t i = 1; i < xs.size(); ++i) acc += xs[i];
        return acc;
    }
    const size_t half = xs.size() / 2;
    return pairwise_impl(xs.subspan(0, half)) + pairwise_impl(xs.subspan(half));
}

}  // namespace

double pairwise_sum(std::span<const double> xs) { return pairwise_impl(xs); }

std::complex<double> pairwise_sum(std::span<const std::complex<double>> xs) {
    return pairwise_impl(xs);
}

void parallel_for(int64_t n, int64_t block, const std::function<void(int64_t, int64_t)>& fn) {
    if (n <= 0) return;
    const int64_t nblocks = (n + block - 1) / block;
    detail::run_blocks(nblocks, [&](int64_t bi) {
        const int64_t lo = bi * block;
        fn(lo, std::min(n, lo + block));
    });
}

}  // namespace restdig
