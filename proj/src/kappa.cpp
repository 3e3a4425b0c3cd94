#include "restdig/kappa.hpp"

#include <cmath>
#include <numeric>

#include "restdig/int128.hpp"
#include "restdig/primes.hpp"
#include "restdig/sieve.hpp"

namespace restdig {

KappaValue kappa(const DigitSystem& ds, uint64_t q, uint64_t t) {
    require(q >= 1 && t < q, "kappa: need q >= 1, 0 <= t < q");
    const auto kd = kappa_decomposition(q, static_cast<uint64_t>(ds.base()));
    return kappa_with(ds, q, t, kd.L, kd.h);
}

KappaValue kappa_with(const DigitSystem& ds, uint64_t q, uint64_t t, int L, uint64_t h) {
    require(q >= 1 && t < q, "kappa: need q >= 1, 0 <= t < q");
    require(q <= 1'000'000'000ull, "kappa: modulus above the 10^9 desk budget");
    const uint64_t b = static_cast<uint64_t>(ds.base());
    auto [u, v] = uv_split(q, b);
    require(L >= power_level_L(u, b), "kappa: level L too small for u | b^L");
    if (v > 1)
        require(mulmod_u64(b % v, h % v, v) == 1, "kappa: h is not an inverse of b mod v");

    const auto bl128 = checked_pow_u128(b, static_cast<unsigned>(L));
    require(bl128.has_value(), "kappa: b^L overflows");
    require_budget(*bl128 <= 100'000'000ull, "kappa: b^L above the 10^8 enumeration budget");
    const uint64_t bL = static_cast<uint64_t>(*bl128);

    const uint64_t m = b * v;  // gcd modulus bv; b < 2^31 and v <= 10^9 keep this in range
    const uint64_t bh = mulmod_u64(b % m, h % m, m);
    const uint64_t bht = mulmod_u64(bh, t % m, m);

    // survivors n < b^L, n = t (mod u), n in C, gcd(bht + (1-bh)n, bv) = 1
    uint64_t count = 0;
    auto visit = [&](uint64_t n) {
        // w = bht + (1 - bh) n (mod m), assembled from nonnegative pieces
        const uint64_t nm = n % m;
        uint64_t w = (bht + nm) % m;
        w = (w + m - mulmod_u64(bh, nm, m)) % m;
        if (std::gcd(w, m) == 1) ++count;
    };

    const uint64_t tu = t % u;
    const uint128 members = ds.count(L);
    if (members < static_cast<uint128>(bL / u + 1)) {
        ds.enumerate(L, [&](uint128 n) {
            const uint64_t n64 = static_cast<uint64_t>(n);
            if (n64 % u == tu) visit(n64);
        });
    } else {
        for (uint64_t n = tu; n < bL; n += u)
            if (ds.contains(n)) visit(n);
    }

    KappaValue kv;
    kv.decomposition = {q, u, v, h, L};
    kv.termCount = count;
    mpz_class denom;
    mpz_ui_pow_ui(denom.get_mpz_t(), static_cast<unsigned long>(ds.allowed_count()),
                  static_cast<unsigned long>(L));
    denom *= static_cast<unsigned long>(euler_phi(b * v));
    kv.value = mpq_class(mpz_class(static_cast<unsigned long>(b)) * count, denom);
    kv.value.canonicalize();
    return kv;
}

Obstruction obstruction(const DigitSystem& ds, uint64_t q, uint64_t t) {
    require(q >= 1 && t < q, "obstruction: need q >= 1, 0 <= t < q");
    if (std::gcd(t, q) > 1) return Obstruction::Unit;
    const uint64_t b = static_cast<uint64_t>(ds.base());
    for (uint64_t bj = b; bj <= q; bj *= b) {
        if (q % bj == 0 && !ds.contains(t % bj)) return Obstruction::Digit;
        if (bj > q / b) break;  // next power would overflow past q anyway
    }
    return Obstruction::None;
}

mpq_class maynard_coefficient(const DigitSystem& ds) {
    const auto c = ds.constants();
    const unsigned long b = static_cast<unsigned long>(ds.base());
    const unsigned long phi_b = static_cast<unsigned long>(euler_phi(b));
    mpq_class coeff(mpz_class(b) * (mpz_class(phi_b) - c.sPrime),
                    mpz_class(static_cast<unsigned long>(ds.allowed_count())) * phi_b);
    coeff.canonicalize();
    // Theorem-level identity: the q = 1 density is exactly this coefficient.
    require(coeff == kappa(ds, 1, 0).value,
            "maynard_coefficient: mismatch against kappa(1,0)");
    return coeff;
}

DirichletReport verify_dirichlet(const DigitSystem& ds, uint64_t q, uint64_t t, int Nmin,
                                 int Nmax) {
    require(Nmin >= 0 && Nmin <= Nmax, "verify_dirichlet: bad N range");
    DirichletReport rep;
    rep.q = q;
    rep.t = t;
    rep.kappaValue = kappa(ds, q, t);
    const bool positive = rep.kappaValue.value > 0;
    const double kd = mpq_get_d(rep.kappaValue.value.get_mpq_t());
    const double bs = static_cast<double>(ds.allowed_count());

    for (int N = Nmin; N <= Nmax; ++N) {
        DirichletRow row;
        row.N = N;
        row.empirical = lambda_weighted_sum(ds, N, {q, t});
        row.predicted = kd * std::pow(bs, N);
        row.ratio = positive ? row.empirical / row.predicted : 0.0;
        rep.rows.push_back(row);
    }
    if (positive && !rep.rows.empty()) {
        rep.monotoneApproach = true;
        for (size_t i = 1; i < rep.rows.size(); ++i)
            if (std::abs(rep.rows[i].ratio - 1.0) > std::abs(rep.rows[i - 1].ratio - 1.0))
                rep.monotoneApproach = false;
        rep.finalWithinTenPercent = std::abs(rep.rows.back().ratio - 1.0) <= 0.10;
        rep.closerAtEnd = std::abs(rep.rows.back().ratio - 1.0) <=
                          std::abs(rep.rows.front().ratio - 1.0);
    } else if (!positive) {
        // at tiny scales, prime powers with anomalous digits can still land in
        // the class; list them for the largest N requested
        const uint128 limit128 = ds.power_bound(Nmax);
        if (limit128 <= kSieveLimit) {
            const uint64_t limit = static_cast<uint64_t>(limit128);
            for (uint64_t lo = 0; lo < limit; lo += kSegmentSpan) {
                const uint64_t hi = std::min(limit, lo + kSegmentSpan);
                sieve_range(lo, hi).for_each_site([&](const SieveSegment::Site& s) {
                    if (s.n % q == t && ds.contains(s.n)) rep.residualSites.push_back(s.n);
                });
            }
        }
    }
    return rep;
}

}  // namespace restdig
