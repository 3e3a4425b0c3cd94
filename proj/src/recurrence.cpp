#include "restdig/recurrence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "restdig/parallel.hpp"
#include "restdig/sieve.hpp"

namespace restdig {

std::optional<Witness> sarkozy_witness(const DigitSystem& ds, const WitnessQuery& query) {
    require(!query.set.empty(), "sarkozy_witness: the query set is empty");
    require(std::is_sorted(query.set.begin(), query.set.end()) &&
                std::adjacent_find(query.set.begin(), query.set.end()) == query.set.end(),
            "sarkozy_witness: the query set must be strictly increasing");
    const uint64_t span = query.set.back() - query.set.front();

    std::optional<Witness> found;
    restricted_primes(ds, query.searchLimit + 1, {1, 0}, [&](uint64_t p) {
        const uint64_t diff = p - 1;
        if (diff == 0) return true;  // needs two distinct elements
        if (diff > span) return false;  // primes only grow from here
        for (uint64_t a1 : query.set) {
            const uint64_t a2 = a1 + diff;
            if (a2 > query.set.back()) break;
            if (std::binary_search(query.set.begin(), query.set.end(), a2)) {
                found = Witness{a1, a2, p};
                return false;
            }
        }
        return true;
    });
    return found;
}

namespace {

struct ComplexCount {
    std::complex<double> sum{0, 0};
    uint64_t count = 0;
};

ComplexCount residue_exp_sum(const DigitSystem& ds, uint64_t m, int N,
                             const Frequency& theta) {
    const uint128 limit128 = ds.power_bound(N);
    require_budget(limit128 <= kSieveLimit, "b^N above the 10^10 sieve budget");
    const uint64_t limit = static_cast<uint64_t>(limit128);
    const uint64_t t = 1 % m;
    const PointEvaluator pe(theta, limit == 0 ? 0 : limit - 1);
    return segment_reduce<ComplexCount>(
        limit, {},
        [&](const SieveSegment& seg) {
            ComplexCount local;
            std::vector<std::complex<double>> terms;
            seg.for_each_site([&](const SieveSegment::Site& s) {
                if (s.j != 1 || s.n % m != t || !ds.contains(s.n)) return;
                terms.push_back(pe.at(s.n));
            });
            local.sum = pairwise_sum(terms);
            local.count = terms.size();
            return local;
        },
        [](ComplexCount a, ComplexCount b) {
            return ComplexCount{a.sum + b.sum, a.count + b.count};
        });
}

}  // namespace

WeylReport weyl_average(const DigitSystem& ds, uint64_t m, int N, const Frequency& theta) {
    require(m >= 1, "weyl_average: m must be positive");
    WeylReport rep;
    rep.m = m;
    rep.N = N;
    const ComplexCount cc = residue_exp_sum(ds, m, N, theta);
    rep.sampleCount = cc.count;
    if (cc.count > 0) {
        rep.average = cc.sum / static_cast<double>(cc.count);
        rep.magnitude = std::abs(rep.average);
    }
    return rep;
}

double relative_density(const DigitSystem& ds, uint64_t m, int N) {
    require(m >= 1, "relative_density: m must be positive");
    const uint128 limit128 = ds.power_bound(N);
    require_budget(limit128 <= kSieveLimit, "b^N above the 10^10 sieve budget");
    const uint64_t limit = static_cast<uint64_t>(limit128);
    const uint64_t num = restricted_prime_count(ds, limit, {1, 0});
    const uint64_t den = restricted_prime_count(ds, limit, {m, 1 % m});
    if (den == 0) return std::numeric_limits<double>::infinity();
    return static_cast<double>(num) / static_cast<double>(den);
}

VdcReport vdc_harness(const DigitSystem& ds, int qIdx, const std::vector<Frequency>& thetas,
                      int N) {
    require(qIdx >= 1 && qIdx <= 8, "vdc_harness: qIdx must lie in [1, 8]");
    VdcReport rep;
    rep.qIdx = qIdx;
    rep.N = N;
    rep.qFactorial = 1;
    for (int i = 2; i <= qIdx; ++i) rep.qFactorial *= static_cast<uint64_t>(i);
    rep.threshold = 0.25;  // regression reference, not a theorem constant

    const uint128 limit128 = ds.power_bound(N);
    require_budget(limit128 <= kSieveLimit, "b^N above the 10^10 sieve budget");
    const uint64_t limit = static_cast<uint64_t>(limit128);

    // H_q = {p - 1 : p restricted prime, p = 1 (mod q!)} below b^N
    std::vector<uint64_t> shifts;
    restricted_primes(ds, limit, {rep.qFactorial, 1 % rep.qFactorial}, [&](uint64_t p) {
        shifts.push_back(p - 1);
        return true;
    });
    rep.sampleCount = shifts.size();

    for (const Frequency& theta : thetas) {
        for (int harmonic = 1; harmonic <= 5; ++harmonic) {
            VdcEntry entry;
            entry.theta = theta.to_string();
            entry.harmonic = harmonic;
            if (!shifts.empty()) {
                const uint64_t maxArg =
                    static_cast<uint64_t>(harmonic) * shifts.back();
                const PointEvaluator pe(theta, maxArg);
                const int64_t block = 4096;
                const int64_t nblocks =
                    (static_cast<int64_t>(shifts.size()) + block - 1) / block;
                const std::complex<double> total = block_reduce<std::complex<double>>(
                    nblocks, {0.0, 0.0},
                    [&](int64_t bi) {
                        std::vector<std::complex<double>> terms;
                        const size_t lo = static_cast<size_t>(bi * block);
                        const size_t hi =
                            std::min(shifts.size(), lo + static_cast<size_t>(block));
                        for (size_t i = lo; i < hi; ++i)
                            terms.push_back(
                                pe.at(static_cast<uint64_t>(harmonic) * shifts[i]));
                        return pairwise_sum(terms);
                    },
                    [](std::complex<double> a, std::complex<double> b) { return a + b; });
                entry.weylSum = total / static_cast<double>(shifts.size());
                entry.magnitude = std::abs(entry.weylSum);
            }
            entry.belowThreshold = entry.magnitude < rep.threshold;
            rep.entries.push_back(entry);
        }
    }
    return rep;
}

}  // namespace restdig
