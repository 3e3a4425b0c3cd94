#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "restdig/bound_report.hpp"
#include "restdig/digit_system.hpp"
#include "restdig/frequency.hpp"
#include "restdig/kernel.hpp"
#include "restdig/parallel.hpp"

namespace restdig {

struct ResidueClass {
    uint64_t q = 1;
    uint64_t t = 0;
};

inline constexpr uint64_t kSegmentSpan = 1ull << 22;
inline constexpr uint64_t kSieveLimit = 10'000'000'000ull;   // 10^10
inline constexpr uint64_t kMaxSegment = 100'000'000ull;      // 10^8 per range

// Primality plus the prime-power annotation needed to evaluate the von
// Mangoldt function on [lo, hi). Odd primality lives in a bitmap; the prime
// 2 and all proper powers p^j (j >= 2) live in a sparse sorted list.
class SieveSegment {
public:
    struct Site {
        uint64_t n;  // = p^j
        uint64_t p;
        uint32_t j;
    };

    uint64_t lo() const { return lo_; }
    uint64_t hi() const { return hi_; }
    bool is_prime(uint64_t n) const;

    // Prime powers in [lo, hi) in increasing order: Lambda(n) = log p there.
    template <class F>
    void for_each_site(F&& fn) const {
        size_t xi = 0;
        const uint64_t first = first_odd_;
        const uint64_t nodd = odd_count_;
        for (uint64_t i = 0; i < nodd; ++i) {
            if (composite_bit(i)) continue;
            const uint64_t n = first + 2 * i;
            while (xi < extras_.size() && extras_[xi].n < n) {
                fn(extras_[xi]);
                ++xi;
            }
            fn(Site{n, n, 1});
        }
        while (xi < extras_.size()) {
            fn(extras_[xi]);
            ++xi;
        }
    }

    const std::vector<Site>& extras() const { return extras_; }

private:
    friend SieveSegment sieve_range(uint64_t lo, uint64_t hi);

    bool composite_bit(uint64_t i) const {
        return (bits_[i >> 6] >> (i & 63)) & 1;
    }

    uint64_t lo_ = 0, hi_ = 0;
    uint64_t first_odd_ = 1;   // first odd candidate >= max(lo, 3)
    uint64_t odd_count_ = 0;
    std::vector<uint64_t> bits_;       // 1 = composite, over odd candidates
    std::vector<Site> extras_;         // prime 2 plus all p^j with j >= 2
};

SieveSegment sieve_range(uint64_t lo, uint64_t hi);

// Folds per-segment results over [0, limit) with fixed 2^22 segment
// boundaries and a pairwise combine tree; bit-reproducible for any worker
// count.
template <class R, class SegFn, class Combine>
R segment_reduce(uint64_t limit, R identity, SegFn&& per_segment, Combine&& combine) {
    if (limit == 0) return identity;
    const int64_t nsegs = static_cast<int64_t>((limit + kSegmentSpan - 1) / kSegmentSpan);
    return block_reduce<R>(
        nsegs, identity,
        [&](int64_t si) {
            const uint64_t lo = static_cast<uint64_t>(si) * kSegmentSpan;
            const uint64_t hi = std::min(limit, lo + kSegmentSpan);
            return per_segment(sieve_range(lo, hi));
        },
        combine);
}

// sum over n < b^N, n = t (mod q), n in C, of Lambda(n)
double lambda_weighted_sum(const DigitSystem& ds, int N, ResidueClass rc);

// sum over n < b^N, n in C, of Lambda(n) e(n theta)
std::complex<double> lambda_exp_sum(const DigitSystem& ds, int N, const Frequency& theta);

// primes p < limit with p in C and p = t (mod q), in increasing order; the
// callback returns false to stop the stream early
void restricted_primes(const DigitSystem& ds, uint64_t limit, ResidueClass rc,
                       const std::function<bool(uint64_t)>& fn);
std::vector<uint64_t> restricted_primes_vec(const DigitSystem& ds, uint64_t limit,
                                            ResidueClass rc);
uint64_t restricted_prime_count(const DigitSystem& ds, uint64_t limit, ResidueClass rc);

double chebyshev_psi(uint64_t x);

// |sum_{n<x} Lambda(n) e(n alpha)| against Lemma-style RHS
// (x^{4/5} + x^{1/2}/|d beta|^{1/2} + x |d beta|^{1/2}) (log x)^4.
// The middle term is marked not-applicable when beta = 0.
BoundReport lambda_fourier_check(uint64_t x, const RationalApprox& approx);

// materialized (n, log p) list below limit, ascending
struct LambdaSite {
    uint64_t n;
    double logp;
};
std::vector<LambdaSite> lambda_sites(uint64_t limit);

}  // namespace restdig
