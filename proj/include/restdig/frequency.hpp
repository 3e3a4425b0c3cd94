#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "restdig/errors.hpp"

namespace restdig {

enum class FrequencyKind { Rational, FixedPoint, Golden, Sqrt2 };

// A point on R/Z. Rationals are exact; fixed-point values are dyadic
// mantissa/2^bits; the named quadratic irrationals (golden = (sqrt5-1)/2,
// sqrt2 = sqrt2-1) materialize to fixed point on demand. Every kind carries
// an exact rational shift so arc offsets l/d + a/b^N never cost precision.
class Frequency {
public:
    Frequency() : kind_(FrequencyKind::Rational) {}

    static Frequency rational(mpq_class v);
    static Frequency rational(long p, unsigned long q);
    static Frequency fixed_point(mpz_class mantissa, unsigned bits);
    static Frequency golden();
    static Frequency sqrt2();

    FrequencyKind kind() const { return kind_; }
    bool is_rational() const { return kind_ == FrequencyKind::Rational; }
    // Rational kind: the full value in [0,1). Other kinds: the shift part.
    const mpq_class& rational_part() const { return rat_; }
    unsigned fixed_bits() const { return bits_; }
    const mpz_class& mantissa() const { return man_; }

    Frequency plus(const mpq_class& r) const;
    Frequency negated() const;

    double to_double() const;
    bool is_zero() const;

    // Exact value as a rational. Named kinds materialize at >= `bits`
    // fractional bits first, so the result is a certified dyadic+shift
    // approximation within 2^-bits of the true value.
    mpq_class as_rational(unsigned bits = 320) const;

    // True iff value * m is exactly an integer. Conservative (false) for
    // named irrationals.
    bool grid_compatible(const mpz_class& m) const;

    // Continued-fraction convergents of the value mod 1, at most `count`,
    // terminating at an exact rational. Named kinds use their periodic
    // continued fractions exactly when unshifted.
    std::vector<mpq_class> convergents(int count) const;

    // Fixed-point view carrying at least `bits` fractional bits.
    // Identity for rationals (they are exact at any precision).
    Frequency with_precision(unsigned bits) const;

    std::string to_string() const;
    // Accepts "p/q", "dec:<decimal>", "golden", "sqrt2", optional leading '-'.
    static Frequency parse(const std::string& spec);

    bool operator==(const Frequency& o) const;

private:
    FrequencyKind kind_;
    mpq_class rat_;   // Rational: value; others: exact shift (reduced mod 1)
    mpz_class man_;   // FixedPoint (and materialized named): fractional mantissa
    unsigned bits_ = 0;

    friend class LevelStream;
    friend class PointEvaluator;
};

// Guard-bit rule for an N-level base-b product.
unsigned required_bits(int base, int levels);

// Per-level reduced arguments y_i = frac(b^i * theta), i = 0..N-1.
class LevelStream {
public:
    LevelStream(const Frequency& theta, int base, int levels);

    struct Level {
        double y;            // in [0,1)
        double dist;         // distance to the nearest integer
        bool exactly_zero;   // the represented value is exactly 0 mod 1
    };

    Level next();
    int levels() const { return levels_; }

private:
    int base_;
    int levels_;
    int emitted_ = 0;
    bool use_u64_ = false;
    // rational path
    bool rational_ = false;
    uint64_t ru_ = 0, qu_ = 0;
    mpz_class rz_, qz_;
    // fixed-point path (+ rational shift stream)
    mpz_class man_;
    unsigned bits_ = 0;
    bool has_shift_ = false;
    uint64_t sru_ = 0, squ_ = 0;
    mpz_class srz_, sqz_;
    bool shift_u64_ = false;
};

// e(n * theta) with exact argument reduction, valid for 0 <= n <= max_n.
class PointEvaluator {
public:
    PointEvaluator(const Frequency& theta, uint64_t max_n);
    double angle01(uint64_t n) const;  // frac(n * theta)
    std::complex<double> at(uint64_t n) const;

private:
    bool rational_ = false;
    bool use_u64_ = false;
    uint64_t pu_ = 0, qu_ = 0;
    mpz_class pz_, qz_;
    mpz_class man_;
    unsigned bits_ = 0;
    bool has_shift_ = false;
    uint64_t spu_ = 0, squ_ = 0;
};

std::complex<double> unit_exp(double angle01);  // e(x) = exp(2 pi i x)

}  // namespace restdig
