#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "restdig/digit_system.hpp"
#include "restdig/kernel.hpp"

namespace restdig {

// kappa_{q,t} = b / ((b-s)^L phi(bv)) *
//   #{ n < b^L : n = t (mod u), n in C, gcd(bht + (1-bh)n, bv) = 1 }
// with q = uv, gcd(v,b) = 1, rad(u) | b, bh = 1 (mod v), u | b^L.
struct KappaValue {
    mpq_class value;
    KappaDecomposition decomposition;
    uint64_t termCount = 0;
};

KappaValue kappa(const DigitSystem& ds, uint64_t q, uint64_t t);

// Same sum with an explicit level and inverse; kappa is invariant under
// L -> L+1 and h -> h+v, which the tests exercise through this entry point.
KappaValue kappa_with(const DigitSystem& ds, uint64_t q, uint64_t t, int L, uint64_t h);

enum class Obstruction { None, Unit, Digit };
Obstruction obstruction(const DigitSystem& ds, uint64_t q, uint64_t t);

// b (phi(b) - s') / ((b-s) phi(b)); checked against kappa(ds, 1, 0).
mpq_class maynard_coefficient(const DigitSystem& ds);

struct DirichletRow {
    int N = 0;
    double empirical = 0;  // Lambda-weighted restricted sum
    double predicted = 0;  // kappa (b-s)^N
    double ratio = 0;      // empirical / predicted when kappa > 0
};

struct DirichletReport {
    uint64_t q = 1, t = 0;
    KappaValue kappaValue;
    std::vector<DirichletRow> rows;
    bool monotoneApproach = false;   // |ratio - 1| nonincreasing across rows
    bool finalWithinTenPercent = false;
    bool closerAtEnd = false;        // |r_last - 1| <= |r_first - 1|
    // when kappa = 0: the prime powers that still contribute at small scales
    std::vector<uint64_t> residualSites;
};

DirichletReport verify_dirichlet(const DigitSystem& ds, uint64_t q, uint64_t t, int Nmin,
                                 int Nmax);

}  // namespace restdig
