#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "restdig/digit_system.hpp"
#include "restdig/frequency.hpp"

namespace restdig {

struct WitnessQuery {
    std::vector<uint64_t> set;  // strictly increasing, nonnegative
    uint64_t searchLimit = 0;   // primes p <= searchLimit are examined
};

struct Witness {
    uint64_t a1 = 0, a2 = 0, p = 0;  // a1 + p - 1 = a2
};

// Lexicographically first witness (smallest p, then smallest a1) with
// p restricted-prime, p <= searchLimit, a1, a2 in the query set. Absence is
// a value, not an error.
std::optional<Witness> sarkozy_witness(const DigitSystem& ds, const WitnessQuery& query);

struct WeylReport {
    uint64_t m = 1;
    int N = 0;
    uint64_t sampleCount = 0;
    std::complex<double> average{0, 0};
    double magnitude = 0;
};

// average of e(p theta) over restricted primes p = 1 (mod m), p < b^N
WeylReport weyl_average(const DigitSystem& ds, uint64_t m, int N, const Frequency& theta);

// #(P_C in [0,b^N)) / #(P_C, p = 1 mod m, in [0,b^N)); +inf when empty
double relative_density(const DigitSystem& ds, uint64_t m, int N);

struct VdcEntry {
    std::string theta;
    int harmonic = 1;  // Weyl sum over e(j h theta)
    std::complex<double> weylSum{0, 0};
    double magnitude = 0;
    bool belowThreshold = false;
};

struct VdcReport {
    int qIdx = 1;
    uint64_t qFactorial = 1;
    int N = 0;
    uint64_t sampleCount = 0;  // |H_q| within the window
    double threshold = 0;      // regression reference for the flags
    std::vector<VdcEntry> entries;
};

// H = P_C - 1, H_q = H intersect q! Z, enumerated below b^N; first-harmonic
// Weyl sums plus sweeps over harmonics up to 5 at each supplied theta.
VdcReport vdc_harness(const DigitSystem& ds, int qIdx, const std::vector<Frequency>& thetas,
                      int N);

}  // namespace restdig
