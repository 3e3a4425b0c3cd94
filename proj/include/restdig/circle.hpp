#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "restdig/bound_report.hpp"
#include "restdig/digit_system.hpp"
#include "restdig/frequency.hpp"

namespace restdig {

// a/b^N = ell/d + eta/b^N with gcd(ell,d) = 1, d <= D0 and
// b^N ell/d + eta an integer; eta = etaNum/etaDen in lowest terms.
struct ArcPoint {
    uint64_t a = 0;
    uint64_t ell = 0;
    uint64_t d = 1;
    int64_t etaNum = 0;
    int64_t etaDen = 1;
};

struct ArcDecomposition {
    int N = 0;
    uint64_t M = 0;  // b^N
    uint64_t D0 = 1;
    std::vector<ArcPoint> points;  // indexed by a
};

ArcDecomposition arc_decomposition(const DigitSystem& ds, int N, uint64_t D0);
void arc_decomposition_stream(const DigitSystem& ds, int N, uint64_t D0,
                              const std::function<void(const ArcPoint&)>& fn);

struct ReductionParameters {
    double A = 2;        // target log power in the error normalization
    double Aprime = 0;   // arc cutoff exponent (d < log^{A'}(b^N)); 0 derives
                         // the minimal value from (A, alpha)
    double Bexp = 2;     // inversion window exponent (|eta| < log^B(b^N))
    uint64_t D0 = 0;     // Dirichlet cutoff; 0 defaults to floor(b^{N/2})
};

// Smallest arc-cutoff exponent compatible with target power A; fails with a
// diagnostic when alpha >= 1/5 (the hypothesis is then unsatisfiable).
double minimal_Aprime(double A, double alpha);

// Completed inversion identity: sum over the full eta window J of
// C^(theta+x+eta/b^N) K(eta) against b^N C^(theta+x), with the Dirichlet
// kernel K summed directly. Reports |lhs-rhs| / (b^N (b-s)^N) against the
// declared 1e-8 reference.
BoundReport inversion_complete(const DigitSystem& ds, int N, const Frequency& theta,
                               const Frequency& x);

struct TruncatedInversion {
    std::complex<double> truncated;
    std::complex<double> reference;  // b^N * C^(theta + x)
    double deviation = 0;            // |truncated - reference|
    double budget = 0;               // (b-s)^N b^N / log^A(b^N)
    int64_t window = 0;              // half-width actually used
    BoundReport report;
};
TruncatedInversion inversion_truncated(const DigitSystem& ds, int N, const Frequency& theta,
                                       const Frequency& x, double Bexp, double A);

// sum over squarefree d < cutoff of mu(d)/phi(d) sum over l in (Z/d)* of
// C^(theta + l/d)
std::complex<double> reduced_main_term_cutoff(const DigitSystem& ds, int N,
                                              const Frequency& theta, double cutoff);
std::complex<double> reduced_main_term(const DigitSystem& ds, int N, const Frequency& theta,
                                       const ReductionParameters& params);

struct ReductionComparison {
    std::complex<double> direct;   // Lambda-weighted exponential sum
    std::complex<double> reduced;  // arc main term
    double discrepancy = 0;        // |direct - reduced| / (b-s)^N
    bool alphaBelowFifth = false;
    double cutoff = 0;
};
ReductionComparison compare_direct_vs_reduced(const DigitSystem& ds, int N,
                                              const Frequency& theta,
                                              const ReductionParameters& params);

// Minor-arc double sums at dyadic ranges d ~ D, |eta| ~ B (first) and
// |eta| <= 1 (second), against the two displayed majorants.
std::pair<BoundReport, BoundReport> minor_arc_report(const DigitSystem& ds, int N, uint64_t D,
                                                     uint64_t B, uint64_t D0,
                                                     const Frequency& theta);

struct ExceptionalHit {
    uint64_t u = 1, v = 1, ell = 0;
    double magnitude = 0;
};
struct ExceptionalScan {
    double threshold = 0;  // (b-s)^N exp(-N^{2/3}/b)
    double cutoff = 0;     // log^{A'}(b^N)
    std::vector<ExceptionalHit> hits;
    bool uniqueVPerU = true;  // at most one distinct v per u among hits
};
ExceptionalScan exceptional_rational_scan(const DigitSystem& ds, int N, const Frequency& theta,
                                          double Aprime);

// Lambda^(-l/d) against mu(d)/phi(d) b^N, deviation normalized by
// b^N / log^C(b^N)
BoundReport arc_reduction_check(const DigitSystem& ds, int N, uint64_t d, uint64_t ell,
                                double Cexp);

}  // namespace restdig
