#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace restdig {

// Worker-count control for all parallel scans. 0 restores the hardware default.
void set_worker_count(int n);
int worker_count();

namespace detail {
void run_blocks(int64_t nblocks, const std::function<void(int64_t)>& fn);
}

// Evaluates block_fn(i) for i in [0, nblocks) on the worker pool, then folds
// the per-block results with a pairwise tree over the block index. Block
// boundaries are fixed by the caller, so the result is bit-identical for any
// worker count.
template <class R, class BlockFn, class Combine>
R block_reduce(int64_t nblocks, R identity, BlockFn&& block_fn, Combine&& combine) {
    if (nblocks <= 0) return identity;
    std::vector<R> partial(static_cast<size_t>(nblocks));
    detail::run_blocks(nblocks,
                       [&](int64_t i) { partial[static_cast<size_t>(i)] = block_fn(i); });
    size_t n = partial.size();
    while (n > 1) {
        const size_t half = n / 2;
        for (size_t i = 0; i < half; ++i)
            partial[i] = combine(partial[2 * i], partial[2 * i + 1]);
        if (n % 2 == 1) {
            partial[half] = partial[n - 1];
            n = half + 1;
        } else {
            n = half;
        }
    }
    return partial[0];
}

// Pairwise summation of a fixed-order sequence.
double pairwise_sum(std::span<const double> xs);
std::complex<double> pairwise_sum(std::span<const std::complex<double>> xs);

// Runs fn(lo, hi) over [0, n) split into fixed blocks; fn must only touch
// disjoint state per block.
void parallel_for(int64_t n, int64_t block, const std::function<void(int64_t, int64_t)>& fn);

}  // namespace restdig
