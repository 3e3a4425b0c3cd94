#include "restdig/frequency.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "restdig/int128.hpp"

namespace restdig {

namespace {

// v mod 1 into [0,1)
mpq_class frac1(const mpq_class& v) {
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), v.get_num().get_mpz_t(), v.get_den().get_mpz_t());
    mpq_class r = v - mpq_class(fl);
    r.canonicalize();
    return r;
}

double frac_to_double(const mpz_class& man, unsigned bits) {
    if (man == 0) return 0.0;
    long e = 0;
    const double d = mpz_get_d_2exp(&e, man.get_mpz_t());
    return std::ldexp(d, static_cast<int>(e) - static_cast<int>(bits));
}

mpz_class materialize_mantissa(FrequencyKind kind, unsigned bits) {
    // golden: floor(((sqrt5)-1)/2 * 2^bits); sqrt2: floor((sqrt2-1) * 2^bits)
    mpz_class one = 1;
    mpz_class pow2;
    mpz_mul_2exp(pow2.get_mpz_t(), one.get_mpz_t(), bits);
    mpz_class sq;
    if (kind == FrequencyKind::Golden) {
        mpz_class five = 5;
        mpz_class t;
        mpz_mul_2exp(t.get_mpz_t(), five.get_mpz_t(), 2 * bits);
        mpz_sqrt(sq.get_mpz_t(), t.get_mpz_t());
        mpz_class m = sq - pow2;
        return m >> 1;
    }
    mpz_class two = 2;
    mpz_class t;
    mpz_mul_2exp(t.get_mpz_t(), two.get_mpz_t(), 2 * bits);
    mpz_sqrt(sq.get_mpz_t(), t.get_mpz_t());
    return sq - pow2;
}

}  // namespace

unsigned required_bits(int base, int levels) {
    const double b = std::max(2, base);
    return static_cast<unsigned>(std::ceil(std::max(0, levels) * std::log2(b))) + 64;
}

Frequency Frequency::rational(mpq_class v) {
    Frequency f;
    f.kind_ = FrequencyKind::Rational;
    v.canonicalize();
    f.rat_ = frac1(v);
    return f;
}

Frequency Frequency::rational(long p, unsigned long q) {
    require(q != 0, "frequency: zero denominator");
    return rational(mpq_class(p, q));
}

Frequency Frequency::fixed_point(mpz_class mantissa, unsigned bits) {
    require(bits > 0, "frequency: fixed point needs positive precision");
    Frequency f;
    f.kind_ = FrequencyKind::FixedPoint;
    mpz_fdiv_r_2exp(f.man_.get_mpz_t(), mantissa.get_mpz_t(), bits);
    f.bits_ = bits;
    return f;
}

Frequency Frequency::golden() {
    Frequency f;
    f.kind_ = FrequencyKind::Golden;
    return f;
}

Frequency Frequency::sqrt2() {
    Frequency f;
    f.kind_ = FrequencyKind::Sqrt2;
    return f;
}

Frequency Frequency::plus(const mpq_class& r) const {
    Frequency f = *this;
    f.rat_ = frac1(rat_ + r);
    return f;
}

Frequency Frequency::negated() const {
    if (kind_ == FrequencyKind::Rational) return rational(-rat_);
    Frequency f = with_precision(std::max(bits_, 320u));
    mpz_class one = 1, pow2;
    mpz_mul_2exp(pow2.get_mpz_t(), one.get_mpz_t(), f.bits_);
    f.man_ = f.man_ == 0 ? mpz_class(0) : mpz_class(pow2 - f.man_);
    f.rat_ = frac1(-rat_);
    return f;
}

double Frequency::to_double() const {
    double base = 0;
    switch (kind_) {
        case FrequencyKind::Rational: return mpq_get_d(rat_.get_mpq_t());
        case FrequencyKind::FixedPoint: base = frac_to_double(man_, bits_); break;
        case FrequencyKind::Golden:
            base = bits_ ? frac_to_double(man_, bits_) : (std::sqrt(5.0) - 1.0) / 2.0;
            break;
        case FrequencyKind::Sqrt2:
            base = bits_ ? frac_to_double(man_, bits_) : std::sqrt(2.0) - 1.0;
            break;
    }
    double v = base + mpq_get_d(rat_.get_mpq_t());
    if (v >= 1.0) v -= 1.0;
    return v;
}

bool Frequency::is_zero() const {
    if (kind_ == FrequencyKind::Rational) return rat_ == 0;
    if (kind_ == FrequencyKind::FixedPoint) return man_ == 0 && rat_ == 0;
    return false;
}

mpq_class Frequency::as_rational(unsigned bits) const {
    if (kind_ == FrequencyKind::Rational) return rat_;
    const Frequency f = with_precision(std::max(bits_, bits));
    mpz_class one = 1, pow2;
    mpz_mul_2exp(pow2.get_mpz_t(), one.get_mpz_t(), f.bits_);
    return frac1(mpq_class(f.man_, pow2) + rat_);
}

bool Frequency::grid_compatible(const mpz_class& m) const {
    if (kind_ == FrequencyKind::Rational)
        return mpz_divisible_p(m.get_mpz_t(), rat_.get_den().get_mpz_t());
    if (kind_ == FrequencyKind::FixedPoint) {
        mpz_class t = man_ * m, r;
        mpz_fdiv_r_2exp(r.get_mpz_t(), t.get_mpz_t(), bits_);
        return r == 0 && mpz_divisible_p(m.get_mpz_t(), rat_.get_den().get_mpz_t());
    }
    return false;
}

Frequency Frequency::with_precision(unsigned bits) const {
    if (kind_ == FrequencyKind::Rational || kind_ == FrequencyKind::FixedPoint) return *this;
    if (bits_ >= bits) return *this;
    Frequency f = *this;
    f.bits_ = bits;
    f.man_ = materialize_mantissa(kind_, bits);
    return f;
}

std::vector<mpq_class> Frequency::convergents(int count) const {
    require(count >= 1, "convergents: count must be >= 1");
    std::vector<mpq_class> out;
    const bool pure_named =
        (kind_ == FrequencyKind::Golden || kind_ == FrequencyKind::Sqrt2) && rat_ == 0;
    if (pure_named) {
        // periodic continued fractions: golden [0;1,1,...], sqrt2-1 [0;2,2,...]
        const unsigned long a = kind_ == FrequencyKind::Golden ? 1 : 2;
        mpz_class pm1 = 1, p0 = 0, qm1 = 0, q0 = 1;
        out.emplace_back(p0, q0);
        while (static_cast<int>(out.size()) < count) {
            mpz_class p = a * p0 + pm1, q = a * q0 + qm1;
            pm1 = p0; p0 = p; qm1 = q0; q0 = q;
            mpq_class c(p, q);
            c.canonicalize();
            out.push_back(c);
        }
        return out;
    }
    const mpq_class v = as_rational();
    mpz_class n = v.get_num(), d = v.get_den();
    mpz_class hm1 = 1, h = 0, km1 = 0, k = 1;  // h/k after consuming a0 = 0
    bool first = true;
    while (static_cast<int>(out.size()) < count) {
        if (first) {
            mpz_class a0;
            mpz_fdiv_q(a0.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
            h = a0;
            n -= a0 * d;
            out.emplace_back(h, k);
            first = false;
            if (n == 0) break;
            std::swap(n, d);
            continue;
        }
        mpz_class a, r;
        mpz_fdiv_qr(a.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
        mpz_class h2 = a * h + hm1, k2 = a * k + km1;
        hm1 = h; h = h2; km1 = k; k = k2;
        mpq_class c(h, k);
        c.canonicalize();
        out.push_back(c);
        if (r == 0) break;
        n = d;
        d = r;
    }
    return out;
}

std::string Frequency::to_string() const {
    std::ostringstream os;
    switch (kind_) {
        case FrequencyKind::Rational:
            os << rat_.get_num() << '/' << rat_.get_den();
            return os.str();
        case FrequencyKind::FixedPoint:
            os << "fixed:" << bits_ << ':' << man_.get_str(16);
            break;
        case FrequencyKind::Golden: os << "golden"; break;
        case FrequencyKind::Sqrt2: os << "sqrt2"; break;
    }
    if (rat_ != 0) os << '+' << rat_.get_num() << '/' << rat_.get_den();
    return os.str();
}

Frequency Frequency::parse(const std::string& spec) {
    require(!spec.empty(), "frequency: empty spec");
    if (spec[0] == '-') return parse(spec.substr(1)).negated();

    std::string base = spec, shift;
    if (auto plus = spec.find('+'); plus != std::string::npos) {
        base = spec.substr(0, plus);
        shift = spec.substr(plus + 1);
    }
    Frequency f;
    if (base == "golden") {
        f = golden();
    } else if (base == "sqrt2") {
        f = sqrt2();
    } else if (base.rfind("fixed:", 0) == 0) {
        auto c2 = base.find(':', 6);
        require(c2 != std::string::npos, "frequency: bad fixed spec");
        unsigned bits = 0;
        try {
            bits = static_cast<unsigned>(std::stoul(base.substr(6, c2 - 6)));
        } catch (const std::exception&) {
            throw PreconditionError("frequency: bad fixed precision");
        }
        mpz_class man;
        require(man.set_str(base.substr(c2 + 1), 16) == 0, "frequency: bad fixed mantissa");
        f = fixed_point(man, bits);
    } else if (base.rfind("dec:", 0) == 0) {
        std::string digits = base.substr(4);
        require(!digits.empty(), "frequency: empty decimal");
        auto dot = digits.find('.');
        std::string ip = dot == std::string::npos ? digits : digits.substr(0, dot);
        std::string fp = dot == std::string::npos ? "" : digits.substr(dot + 1);
        if (ip.empty()) ip = "0";
        for (char c : ip + fp) require(c >= '0' && c <= '9', "frequency: bad decimal digit");
        mpz_class num(ip + fp, 10), den = 1;
        for (size_t i = 0; i < fp.size(); ++i) den *= 10;
        f = rational(mpq_class(num, den));
    } else if (auto slash = base.find('/'); slash != std::string::npos) {
        try {
            mpz_class p(base.substr(0, slash), 10), q(base.substr(slash + 1), 10);
            require(q != 0, "frequency: zero denominator");
            f = rational(mpq_class(p, q));
        } catch (const PreconditionError&) {
            throw;
        } catch (const std::exception&) {
            throw PreconditionError("frequency: bad rational");
        }
    } else {
        try {
            mpz_class p(base, 10);
            f = rational(mpq_class(p));
        } catch (const std::exception&) {
            throw PreconditionError("frequency: unrecognized spec '" + spec + "'");
        }
    }
    if (!shift.empty()) {
        auto slash = shift.find('/');
        require(slash != std::string::npos, "frequency: bad shift");
        mpz_class p(shift.substr(0, slash), 10), q(shift.substr(slash + 1), 10);
        require(q != 0, "frequency: zero shift denominator");
        f = f.plus(mpq_class(p, q));
    }
    return f;
}

bool Frequency::operator==(const Frequency& o) const {
    if (kind_ != o.kind_ || rat_ != o.rat_) return false;
    if (kind_ == FrequencyKind::FixedPoint) return man_ == o.man_ && bits_ == o.bits_;
    return true;  // named kinds compare by identity + shift
}

LevelStream::LevelStream(const Frequency& theta, int base, int levels)
    : base_(base), levels_(levels) {
    require(base >= 2, "level stream: base must be >= 2");
    require(levels >= 0, "level stream: negative level count");
    if (theta.kind() == FrequencyKind::Rational) {
        rational_ = true;
        const mpq_class& v = theta.rational_part();
        if (mpz_fits_ulong_p(v.get_den().get_mpz_t()) &&
            mpz_sizeinbase(v.get_den().get_mpz_t(), 2) <= 63) {
            use_u64_ = true;
            qu_ = mpz_get_ui(v.get_den().get_mpz_t());
            ru_ = mpz_get_ui(v.get_num().get_mpz_t());
        } else {
            rz_ = v.get_num();
            qz_ = v.get_den();
        }
        return;
    }
    const unsigned need = required_bits(base, levels);
    Frequency f = theta;
    if (theta.kind() == FrequencyKind::FixedPoint) {
        if (theta.fixed_bits() < need)
            throw PrecisionError("frequency carries " + std::to_string(theta.fixed_bits()) +
                                 " bits; " + std::to_string(need) +
                                 " required for this product depth");
    } else {
        f = theta.with_precision(need);
    }
    man_ = f.man_;
    bits_ = f.bits_;
    const mpq_class& sh = f.rational_part();
    has_shift_ = sh != 0;
    if (has_shift_) {
        if (mpz_fits_ulong_p(sh.get_den().get_mpz_t()) &&
            mpz_sizeinbase(sh.get_den().get_mpz_t(), 2) <= 63) {
            shift_u64_ = true;
            squ_ = mpz_get_ui(sh.get_den().get_mpz_t());
            sru_ = mpz_get_ui(sh.get_num().get_mpz_t());
        } else {
            srz_ = sh.get_num();
            sqz_ = sh.get_den();
        }
    }
}

LevelStream::Level LevelStream::next() {
    Level lv{};
    require(emitted_ < levels_, "level stream exhausted");
    ++emitted_;
    if (rational_) {
        double y;
        bool zero;
        if (use_u64_) {
            y = qu_ == 1 ? 0.0 : static_cast<double>(ru_) / static_cast<double>(qu_);
            zero = ru_ == 0 || qu_ == 1;
            ru_ = static_cast<uint64_t>((static_cast<uint128>(ru_) * static_cast<unsigned>(base_)) % qu_);
        } else {
            mpq_class v(rz_, qz_);
            v.canonicalize();
            y = mpq_get_d(v.get_mpq_t());
            zero = rz_ == 0;
            rz_ = (rz_ * base_) % qz_;
        }
        lv.y = y;
        lv.exactly_zero = zero;
        lv.dist = std::min(y, 1.0 - y);
        if (zero) { lv.y = 0.0; lv.dist = 0.0; }
        return lv;
    }
    double y = frac_to_double(man_, bits_);
    bool zero = man_ == 0;
    if (has_shift_) {
        double ys;
        bool szero;
        if (shift_u64_) {
            ys = static_cast<double>(sru_) / static_cast<double>(squ_);
            szero = sru_ == 0;
            sru_ = static_cast<uint64_t>((static_cast<uint128>(sru_) * static_cast<unsigned>(base_)) % squ_);
        } else {
            mpq_class v(srz_, sqz_);
            v.canonicalize();
            ys = mpq_get_d(v.get_mpq_t());
            szero = srz_ == 0;
            srz_ = (srz_ * base_) % sqz_;
        }
        y += ys;
        if (y >= 1.0) y -= 1.0;
        zero = zero && szero;
    }
    man_ *= base_;
    mpz_fdiv_r_2exp(man_.get_mpz_t(), man_.get_mpz_t(), bits_);
    lv.y = zero ? 0.0 : y;
    lv.exactly_zero = zero;
    lv.dist = zero ? 0.0 : std::min(y, 1.0 - y);
    return lv;
}

PointEvaluator::PointEvaluator(const Frequency& theta, uint64_t max_n) {
    if (theta.kind() == FrequencyKind::Rational) {
        rational_ = true;
        const mpq_class& v = theta.rational_part();
        if (mpz_sizeinbase(v.get_den().get_mpz_t(), 2) <= 63) {
            use_u64_ = true;
            qu_ = mpz_get_ui(v.get_den().get_mpz_t());
            pu_ = mpz_get_ui(v.get_num().get_mpz_t());
        } else {
            pz_ = v.get_num();
            qz_ = v.get_den();
        }
        return;
    }
    const unsigned need =
        64 + static_cast<unsigned>(std::ceil(std::log2(static_cast<double>(max_n) + 2.0)));
    Frequency f = theta;
    if (theta.kind() == FrequencyKind::FixedPoint) {
        if (theta.fixed_bits() < need)
            throw PrecisionError("frequency precision too low for terms up to n = " +
                                 std::to_string(max_n));
    } else {
        f = theta.with_precision(need);
    }
    man_ = f.man_;
    bits_ = f.bits_;
    const mpq_class& sh = f.rational_part();
    has_shift_ = sh != 0;
    if (has_shift_) {
        require(mpz_sizeinbase(sh.get_den().get_mpz_t(), 2) <= 63,
                "point evaluator: shift denominator too large");
        squ_ = mpz_get_ui(sh.get_den().get_mpz_t());
        spu_ = mpz_fdiv_ui(sh.get_num().get_mpz_t(), squ_);
    }
}

double PointEvaluator::angle01(uint64_t n) const {
    if (rational_) {
        if (use_u64_) {
            if (qu_ == 1) return 0.0;
            const uint64_t r = mulmod_u64(n % qu_, pu_ % qu_, qu_);
            return static_cast<double>(r) / static_cast<double>(qu_);
        }
        mpz_class r = (pz_ * n) % qz_;
        mpq_class v(r, qz_);
        v.canonicalize();
        return mpq_get_d(v.get_mpq_t());
    }
    mpz_class t = man_ * n, r;
    mpz_fdiv_r_2exp(r.get_mpz_t(), t.get_mpz_t(), bits_);
    double y = frac_to_double(r, bits_);
    if (has_shift_) {
        const uint64_t sr = mulmod_u64(n % squ_, spu_, squ_);
        y += static_cast<double>(sr) / static_cast<double>(squ_);
        if (y >= 1.0) y -= 1.0;
    }
    return y;
}

std::complex<double> PointEvaluator::at(uint64_t n) const { return unit_exp(angle01(n)); }

std::complex<double> unit_exp(double angle01) {
    const double a = 2.0 * std::numbers::pi * angle01;
    return {std::cos(a), std::sin(a)};
}

}  // namespace restdig
