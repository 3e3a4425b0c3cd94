#include "restdig/kernel.hpp"

#include <numeric>

#include "restdig/errors.hpp"
#include "restdig/int128.hpp"
#include "restdig/primes.hpp"

namespace restdig {

std::pair<uint64_t, uint64_t> uv_split(uint64_t q, uint64_t b) {
    require(q >= 1, "uv_split: q must be positive");
    require(b >= 2, "uv_split: base must be >= 2");
    uint64_t u = 1, v = q;
    for (const auto& f : factorize(q)) {
        if (b % f.p == 0) {
            for (int e = 0; e < f.e; ++e) {
                u *= f.p;
                v /= f.p;
            }
        }
    }
    return {u, v};
}

uint64_t unit_inverse_h(uint64_t b, uint64_t v) {
    require(v >= 1, "unit_inverse_h: v must be positive");
    if (v == 1) return 0;
    require(std::gcd(b, v) == 1, "unit_inverse_h: gcd(b, v) must be 1");
    // extended Euclid on (b mod v, v)
    int64_t r0 = static_cast<int64_t>(v), r1 = static_cast<int64_t>(b % v);
    int64_t s0 = 0, s1 = 1;
    while (r1 != 0) {
        const int64_t k = r0 / r1;
        r0 -= k * r1;
        std::swap(r0, r1);
        s0 -= k * s1;
        std::swap(s0, s1);
    }
    int64_t h = s0 % static_cast<int64_t>(v);
    if (h < 0) h += static_cast<int64_t>(v);
    return static_cast<uint64_t>(h);
}

int power_level_L(uint64_t u, uint64_t b) {
    require(u >= 1, "power_level_L: u must be positive");
    require(b >= 2, "power_level_L: base must be >= 2");
    if (u == 1) return 1;  // floored at 1
    for (const auto& f : factorize(u))
        require(b % f.p == 0, "power_level_L: u has a prime not dividing b");
    uint64_t cur = b % u;
    int L = 1;
    while (cur != 0) {
        cur = mulmod_u64(cur, b % u, u);
        ++L;
    }
    return L;
}

KappaDecomposition kappa_decomposition(uint64_t q, uint64_t b) {
    KappaDecomposition kd;
    kd.q = q;
    std::tie(kd.u, kd.v) = uv_split(q, b);
    kd.h = unit_inverse_h(b, kd.v);
    kd.L = power_level_L(kd.u, b);
    return kd;
}

int64_t ramanujan_sum(uint64_t d, int64_t k) {
    require(d >= 1, "ramanujan_sum: d must be positive");
    const uint64_t km = static_cast<uint64_t>(((k % static_cast<int64_t>(d)) +
                                               static_cast<int64_t>(d)) %
                                              static_cast<int64_t>(d));
    const uint64_t g = km == 0 ? d : std::gcd(d, km);
    const uint64_t dg = d / g;
    const int mu = mobius(dg);
    if (mu == 0) return 0;
    return mu * static_cast<int64_t>(euler_phi(d) / euler_phi(dg));
}

BrauerRademacher brauer_rademacher(uint64_t j, int64_t k) {
    require(j >= 1, "brauer_rademacher: j must be positive");
    BrauerRademacher br;
    br.lhs = 0;
    for (uint64_t d : divisors(j)) {
        const int mu = mobius(d);
        if (mu == 0) continue;
        mpq_class term(mu * ramanujan_sum(d, k), euler_phi(d));
        term.canonicalize();
        br.lhs += term;
    }
    br.lhs.canonicalize();
    const uint64_t ka = static_cast<uint64_t>(k < 0 ? -k : k);
    const uint64_t g = ka == 0 ? j : std::gcd(j, ka);
    if (g == 1) {
        br.rhs = mpq_class(j, euler_phi(j));
        br.rhs.canonicalize();
    } else {
        br.rhs = 0;
    }
    br.identity_holds = br.lhs == br.rhs;
    return br;
}

RationalApprox dirichlet_approx(const Frequency& x, uint64_t D0) {
    require(D0 >= 1, "dirichlet_approx: D0 must be positive");
    // convergent denominators grow at least like Fibonacci, so 96 is plenty
    // for any D0 within 64-bit range
    const auto cs = x.convergents(96);
    mpq_class best = cs.front();
    const mpz_class d0(static_cast<unsigned long>(D0));
    for (const auto& c : cs) {
        if (c.get_den() > d0) break;
        best = c;
    }
    RationalApprox ra;
    ra.D0 = D0;
    ra.ell = static_cast<int64_t>(mpz_get_ui(best.get_num().get_mpz_t()));
    ra.d = mpz_get_ui(best.get_den().get_mpz_t());
    ra.beta_exact = x.as_rational() - best;
    ra.beta_exact.canonicalize();
    ra.beta = mpq_get_d(ra.beta_exact.get_mpq_t());
    return ra;
}

}  // namespace restdig
