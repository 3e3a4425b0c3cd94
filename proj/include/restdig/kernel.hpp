#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <utility>
#include <vector>

#include "restdig/frequency.hpp"

namespace restdig {

// The (u, v, h, L) data attached to a modulus q relative to a base b:
// q = u*v with every prime of u dividing b and gcd(v, b) = 1;
// b*h = 1 (mod v) with h in [0, v); L minimal positive with u | b^L.
struct KappaDecomposition {
    uint64_t q = 1;
    uint64_t u = 1;
    uint64_t v = 1;
    uint64_t h = 0;
    int L = 1;
};

// u = product of the prime powers of q whose primes divide b; v = q/u.
std::pair<uint64_t, uint64_t> uv_split(uint64_t q, uint64_t b);

// Canonical h in [0, v) with b*h = 1 (mod v); h = 0 when v = 1.
uint64_t unit_inverse_h(uint64_t b, uint64_t v);

// Minimal L >= 1 with u | b^L; requires every prime of u to divide b.
int power_level_L(uint64_t u, uint64_t b);

KappaDecomposition kappa_decomposition(uint64_t q, uint64_t b);

// c_d(k) = sum over l in (Z/dZ)* of e(lk/d), via mu(d/g) phi(d)/phi(d/g).
int64_t ramanujan_sum(uint64_t d, int64_t k);

struct BrauerRademacher {
    mpq_class lhs;  // sum over d|j of mu(d) c_d(k) / phi(d)
    mpq_class rhs;  // (j/phi(j)) [gcd(j,k)=1]
    bool identity_holds = false;
};
BrauerRademacher brauer_rademacher(uint64_t j, int64_t k);

// x = ell/d + beta with d <= D0, gcd(ell,d) = 1, |beta| <= 1/(d*D0).
struct RationalApprox {
    int64_t ell = 0;
    uint64_t d = 1;
    double beta = 0;
    mpq_class beta_exact;
    uint64_t D0 = 1;
};

// Last continued-fraction convergent of x with denominator <= D0.
RationalApprox dirichlet_approx(const Frequency& x, uint64_t D0);

}  // namespace restdig
