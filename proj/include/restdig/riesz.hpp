#pragma once

#include <complex>
#include <cstdint>

#include "restdig/bound_report.hpp"
#include "restdig/digit_system.hpp"
#include "restdig/frequency.hpp"

namespace restdig {

// One evaluation of the digit-set transform at N product levels, with a
// conservative rounding-error bound.
struct EvaluatedTransform {
    std::complex<double> value;
    double absErrorBound = 0;
    int levels = 0;
};

// C^(theta) = prod_{i<N} sum_{d in A} e(d b^i theta). Each level uses the
// closed geometric form (full digit sum minus one series per excluded run)
// with a direct O(|A|) fallback near the singular denominator.
EvaluatedTransform chat(const DigitSystem& ds, int N, const Frequency& theta);

// prod_i min{b-s, (k+1)/(2 ||b^i theta||)}; a level at ||.|| = 0 contributes b-s.
double envelope(const DigitSystem& ds, int N, const Frequency& theta);

// (b-s)^N exp(-(1/b) sum_i ||b^i theta||^2). Requires two consecutive
// allowed digits.
double decay_envelope(const DigitSystem& ds, int N, const Frequency& theta);

// sum over the full b^N grid of |C^(x + a/b^N)| against (C0 b log b)^N.
BoundReport l1_scan(const DigitSystem& ds, int N, const Frequency& x);

// sum over d in [D,2D), l coprime, of the sup over a 9-point grid in
// (-1/(10D^2), 1/(10D^2)) of |C^(l/d + x + eps)|, against
// (D^2 + b^N)(C0 log b)^N. Report-only (implied constant unknown).
BoundReport large_sieve_scan(const DigitSystem& ds, int N, uint64_t D, const Frequency& x);

// sum over d in [D,2D), l coprime, grid points m/b^N with |m - b^N l/d| < B,
// of |C^(x + m/b^N)|, against (b-s)^N (D^2 B)^alpha. Report-only.
BoundReport hybrid_scan(const DigitSystem& ds, int N, uint64_t D, uint64_t B,
                        const Frequency& x);

// #{k in [iLo, iHi] : |C^(theta + k/b^N)| >= (b-s)^N / lambda} against
// |I|^{2 log 2 / log b} lambda^{c_b} with c_b = 4 b^3 log((b-2)/2).
BoundReport large_spectra_count(const DigitSystem& ds, int N, const Frequency& theta,
                                int64_t iLo, int64_t iHi, double lambda);

}  // namespace restdig
