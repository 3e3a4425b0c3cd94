#include "restdig/sieve.hpp"

#include <cmath>
#include <numeric>

#include "restdig/int128.hpp"
#include "restdig/primes.hpp"

namespace restdig {

bool SieveSegment::is_prime(uint64_t n) const {
    require(n >= lo_ && n < hi_, "is_prime: n outside segment");
    if (n == 2) return true;
    if (n < 2 || n % 2 == 0) return false;
    return !composite_bit((n - first_odd_) / 2);
}

SieveSegment sieve_range(uint64_t lo, uint64_t hi) {
    require(lo < hi, "sieve_range: empty range");
    require_budget(hi <= kSieveLimit, "sieve_range: upper end above 10^10");
    require_budget(hi - lo <= kMaxSegment, "sieve_range: segment longer than 10^8");

    SieveSegment seg;
    seg.lo_ = lo;
    seg.hi_ = hi;
    uint64_t first = std::max<uint64_t>(lo, 3);
    if (first % 2 == 0) ++first;
    seg.first_odd_ = first;
    seg.odd_count_ = first >= hi ? 0 : (hi - first + 1) / 2;
    seg.bits_.assign((seg.odd_count_ + 63) / 64, 0);

    auto mark = [&](uint64_t n) {
        const uint64_t i = (n - first) / 2;
        seg.bits_[i >> 6] |= 1ull << (i & 63);
    };

    for (uint32_t p : small_primes()) {
        if (p == 2) continue;
        const uint64_t pp = static_cast<uint64_t>(p) * p;
        if (pp >= hi) break;
        uint64_t start = std::max(pp, ((first + p - 1) / p) * p);
        if (start % 2 == 0) start += p;
        for (uint64_t m = start; m < hi; m += 2 * static_cast<uint64_t>(p)) mark(m);
    }

    if (lo <= 2 && 2 < hi) seg.extras_.push_back({2, 2, 1});
    for (uint32_t p : small_primes()) {
        const uint128 pp = static_cast<uint128>(p) * p;
        if (pp >= hi) break;
        uint128 pw = pp;
        uint32_t j = 2;
        while (pw < hi) {
            if (pw >= lo) seg.extras_.push_back({static_cast<uint64_t>(pw), p, j});
            pw *= p;
            ++j;
        }
    }
    std::sort(seg.extras_.begin(), seg.extras_.end(),
              [](const SieveSegment::Site& a, const SieveSegment::Site& b) { return a.n < b.n; });
    return seg;
}

namespace {

uint64_t power_limit(const DigitSystem& ds, int N) {
    const uint128 m = ds.power_bound(N);
    require_budget(m <= kSieveLimit, "b^N above the 10^10 sieve budget");
    return static_cast<uint64_t>(m);
}

struct SumCount {
    std::complex<double> sum;
    uint64_t count = 0;
};

}  // namespace

double lambda_weighted_sum(const DigitSystem& ds, int N, ResidueClass rc) {
    require(rc.q >= 1 && rc.t < rc.q, "residue class: need q >= 1, 0 <= t < q");
    const uint64_t limit = power_limit(ds, N);
    return segment_reduce<double>(
        limit, 0.0,
        [&](const SieveSegment& seg) {
            std::vector<double> terms;
            seg.for_each_site([&](const SieveSegment::Site& s) {
                if (s.n % rc.q == rc.t && ds.contains(s.n))
                    terms.push_back(std::log(static_cast<double>(s.p)));
            });
            return pairwise_sum(terms);
        },
        [](double a, double b) { return a + b; });
}

std::complex<double> lambda_exp_sum(const DigitSystem& ds, int N, const Frequency& theta) {
    const uint64_t limit = power_limit(ds, N);
    const PointEvaluator pe(theta, limit == 0 ? 0 : limit - 1);
    return segment_reduce<std::complex<double>>(
        limit, {0.0, 0.0},
        [&](const SieveSegment& seg) {
            std::vector<std::complex<double>> terms;
            seg.for_each_site([&](const SieveSegment::Site& s) {
                if (ds.contains(s.n))
                    terms.push_back(std::log(static_cast<double>(s.p)) * pe.at(s.n));
            });
            return pairwise_sum(terms);
        },
        [](std::complex<double> a, std::complex<double> b) { return a + b; });
}

void restricted_primes(const DigitSystem& ds, uint64_t limit, ResidueClass rc,
                       const std::function<bool(uint64_t)>& fn) {
    require(rc.q >= 1 && rc.t < rc.q, "residue class: need q >= 1, 0 <= t < q");
    require_budget(limit <= kSieveLimit, "restricted_primes: limit above 10^10");
    bool go = true;
    for (uint64_t lo = 0; lo < limit && go; lo += kSegmentSpan) {
        const uint64_t hi = std::min(limit, lo + kSegmentSpan);
        const SieveSegment seg = sieve_range(lo, hi);
        seg.for_each_site([&](const SieveSegment::Site& s) {
            if (go && s.j == 1 && s.n % rc.q == rc.t && ds.contains(s.n)) go = fn(s.n);
        });
    }
}

std::vector<uint64_t> restricted_primes_vec(const DigitSystem& ds, uint64_t limit,
                                            ResidueClass rc) {
    std::vector<uint64_t> out;
    restricted_primes(ds, limit, rc, [&](uint64_t p) {
        out.push_back(p);
        return true;
    });
    return out;
}

uint64_t restricted_prime_count(const DigitSystem& ds, uint64_t limit, ResidueClass rc) {
    require(rc.q >= 1 && rc.t < rc.q, "residue class: need q >= 1, 0 <= t < q");
    require_budget(limit <= kSieveLimit, "restricted_prime_count: limit above 10^10");
    return segment_reduce<uint64_t>(
        limit, 0,
        [&](const SieveSegment& seg) {
            uint64_t c = 0;
            seg.for_each_site([&](const SieveSegment::Site& s) {
                if (s.j == 1 && s.n % rc.q == rc.t && ds.contains(s.n)) ++c;
            });
            return c;
        },
        [](uint64_t a, uint64_t b) { return a + b; });
}

double chebyshev_psi(uint64_t x) {
    require_budget(x <= kSieveLimit, "chebyshev_psi: x above 10^10");
    return segment_reduce<double>(
        x, 0.0,
        [&](const SieveSegment& seg) {
            std::vector<double> terms;
            seg.for_each_site([&](const SieveSegment::Site& s) {
                terms.push_back(std::log(static_cast<double>(s.p)));
            });
            return pairwise_sum(terms);
        },
        [](double a, double b) { return a + b; });
}

BoundReport lambda_fourier_check(uint64_t x, const RationalApprox& approx) {
    require_budget(x <= 100'000'000, "lambda_fourier_check: x above the 10^8 budget");
    require(x >= 2, "lambda_fourier_check: x must be >= 2");
    require(approx.d >= 1, "lambda_fourier_check: d must be positive");
    require(std::gcd(static_cast<uint64_t>(approx.ell < 0 ? -approx.ell : approx.ell),
                     approx.d) == 1,
            "lambda_fourier_check: gcd(a, d) must be 1");
    // Lemma hypothesis |beta| < 1/d^2, checked exactly
    mpq_class betaAbs = approx.beta_exact;
    if (betaAbs < 0) betaAbs = -betaAbs;
    require(betaAbs * (mpz_class(static_cast<unsigned long>(approx.d)) *
                       mpz_class(static_cast<unsigned long>(approx.d))) < 1,
            "lambda_fourier_check: hypothesis |beta| < 1/d^2 violated");

    const uint64_t d = approx.d;
    const uint64_t am = static_cast<uint64_t>(
        ((approx.ell % static_cast<int64_t>(d)) + static_cast<int64_t>(d)) %
        static_cast<int64_t>(d));
    const long double beta = static_cast<long double>(approx.beta);

    const std::complex<double> total = segment_reduce<std::complex<double>>(
        x, {0.0, 0.0},
        [&](const SieveSegment& seg) {
            std::vector<std::complex<double>> terms;
            seg.for_each_site([&](const SieveSegment::Site& s) {
                const uint64_t r = d == 1 ? 0 : mulmod_u64(s.n % d, am, d);
                long double a = static_cast<long double>(r) / static_cast<long double>(d) +
                                std::fmod(static_cast<long double>(s.n) * beta, 1.0L);
                a -= std::floor(a);
                terms.push_back(std::log(static_cast<double>(s.p)) *
                                unit_exp(static_cast<double>(a)));
            });
            return pairwise_sum(terms);
        },
        [](std::complex<double> a, std::complex<double> b) { return a + b; });

    const double lhs = std::abs(total);
    const double xd = static_cast<double>(x);
    const double dbeta = std::abs(static_cast<double>(approx.d) * approx.beta);
    const bool middle_applicable = dbeta != 0;
    double rhs = std::pow(xd, 0.8) + xd * std::sqrt(dbeta);
    if (middle_applicable) rhs += std::sqrt(xd) / std::sqrt(dbeta);
    rhs *= std::pow(std::log(xd), 4);

    nlohmann::json ctx{{"op", "lambda_fourier_check"},
                       {"x", x},
                       {"a", approx.ell},
                       {"d", approx.d},
                       {"beta", approx.beta},
                       {"middleTermApplicable", middle_applicable}};
    return ratio_bound_report(lhs, rhs, std::move(ctx));
}

std::vector<LambdaSite> lambda_sites(uint64_t limit) {
    require_budget(limit <= kSieveLimit, "lambda_sites: limit above 10^10");
    std::vector<LambdaSite> out;
    for (uint64_t lo = 0; lo < limit; lo += kSegmentSpan) {
        const uint64_t hi = std::min(limit, lo + kSegmentSpan);
        const SieveSegment seg = sieve_range(lo, hi);
        seg.for_each_site([&](const SieveSegment::Site& s) {
            out.push_back({s.n, std::log(static_cast<double>(s.p))});
        });
    }
    return out;
}

}  // namespace restdig
