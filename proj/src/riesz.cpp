#include "restdig/riesz.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "restdig/parallel.hpp"
#include "restdig/primes.hpp"

namespace restdig {

namespace {

struct Run {
    int lo;
    int len;
};

std::vector<Run> excluded_runs(const DigitSystem& ds) {
    std::vector<Run> runs;
    const auto& ex = ds.excluded();
    size_t i = 0;
    while (i < ex.size()) {
        size_t j = i;
        while (j + 1 < ex.size() && ex[j + 1] == ex[j] + 1) ++j;
        runs.push_back({ex[i], static_cast<int>(j - i + 1)});
        i = j + 1;
    }
    return runs;
}

constexpr double kSingularCutoff = 1.0 / (1 << 20);  // |1 - e(y)| below this: direct sum

std::complex<double> level_factor(const DigitSystem& ds, const std::vector<Run>& runs,
                                  double y, double y_next, bool exactly_zero) {
    const int b = ds.base();
    if (exactly_zero) return {static_cast<double>(ds.allowed_count()), 0.0};
    const std::complex<double> e1 = unit_exp(y);
    const std::complex<double> denom = 1.0 - e1;
    if (std::abs(denom) < kSingularCutoff) {
        std::complex<double> s = 0;
        for (int d : ds.allowed()) s += unit_exp(std::fmod(d * y, 1.0));
        return s;
    }
    // full digit sum minus one geometric series per excluded run, sharing the
    // denominator 1 - e(y); e(b y) comes reduced from the next level
    std::complex<double> num = 1.0 - unit_exp(y_next);
    for (const Run& r : runs) {
        const std::complex<double> elo = unit_exp(std::fmod(r.lo * y, 1.0));
        const std::complex<double> elen = unit_exp(std::fmod(r.len * y, 1.0));
        num -= elo * (1.0 - elen);
    }
    return num / denom;
}

double pow_di(double base, int e) {
    double r = 1;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

}  // namespace

EvaluatedTransform chat(const DigitSystem& ds, int N, const Frequency& theta) {
    require(N >= 0, "chat: N must be nonnegative");
    ds.power_bound(N);
    EvaluatedTransform out;
    out.levels = N;
    if (N == 0) {
        out.value = 1.0;
        return out;
    }
    const auto runs = excluded_runs(ds);
    const int b = ds.base();
    LevelStream ls(theta, b, N);
    std::complex<double> val = 1.0;
    LevelStream::Level cur = ls.next();
    for (int i = 0; i < N; ++i) {
        LevelStream::Level nxt;
        if (i + 1 < N) {
            nxt = ls.next();
        } else {
            nxt.y = std::fmod(b * cur.y, 1.0);
            nxt.dist = std::min(nxt.y, 1.0 - nxt.y);
            nxt.exactly_zero = cur.exactly_zero;
        }
        val *= level_factor(ds, runs, cur.y, nxt.y, cur.exactly_zero);
        cur = nxt;
    }
    out.value = val;
    const int k = static_cast<int>(runs.size());
    const double per_level = 4.0 * std::numeric_limits<double>::epsilon() * (k + 2);
    out.absErrorBound =
        pow_di(static_cast<double>(ds.allowed_count()), N) * (std::pow(1.0 + per_level, N) - 1.0);
    return out;
}

double envelope(const DigitSystem& ds, int N, const Frequency& theta) {
    require(N >= 0, "envelope: N must be nonnegative");
    const double bs = ds.allowed_count();
    const double k1 = static_cast<double>(excluded_runs(ds).size()) + 1.0;
    LevelStream ls(theta, ds.base(), N);
    double prod = 1;
    for (int i = 0; i < N; ++i) {
        const auto lv = ls.next();
        prod *= (lv.exactly_zero || lv.dist == 0) ? bs : std::min(bs, k1 / (2.0 * lv.dist));
    }
    return prod;
}

double decay_envelope(const DigitSystem& ds, int N, const Frequency& theta) {
    require(N >= 0, "decay_envelope: N must be nonnegative");
    require(ds.has_consecutive_pair(),
            "decay_envelope: allowed digits must contain a consecutive pair");
    LevelStream ls(theta, ds.base(), N);
    double s = 0;
    for (int i = 0; i < N; ++i) {
        const auto lv = ls.next();
        s += lv.dist * lv.dist;
    }
    return pow_di(static_cast<double>(ds.allowed_count()), N) * std::exp(-s / ds.base());
}

BoundReport l1_scan(const DigitSystem& ds, int N, const Frequency& x) {
    require(N >= 0, "l1_scan: N must be nonnegative");
    const uint128 m128 = ds.power_bound(N);
    require_budget(m128 <= 10'000'000, "l1_scan: b^N above the 10^7 scan budget");
    const uint64_t M = static_cast<uint64_t>(m128);

    const uint64_t block = 4096;
    const int64_t nblocks = static_cast<int64_t>((M + block - 1) / block);
    const double lhs = block_reduce<double>(
        std::max<int64_t>(nblocks, 1), 0.0,
        [&](int64_t bi) {
            const uint64_t lo = static_cast<uint64_t>(bi) * block;
            const uint64_t hi = std::min(M, lo + block);
            std::vector<double> mags;
            mags.reserve(hi - lo);
            for (uint64_t a = lo; a < hi; ++a) {
                mpq_class sh(a, M);
                sh.canonicalize();
                mags.push_back(std::abs(chat(ds, N, x.plus(sh)).value));
            }
            return pairwise_sum(mags);
        },
        [](double p, double q) { return p + q; });

    const auto c = ds.constants();
    const double rhs = std::pow(c.C0 * ds.base() * std::log(ds.base()), N);
    nlohmann::json ctx{{"op", "l1_scan"},
                       {"system", ds.spec_string()},
                       {"N", N},
                       {"x", x.to_string()},
                       {"points", M}};
    return exact_bound_report(lhs, rhs, std::move(ctx));
}

BoundReport large_sieve_scan(const DigitSystem& ds, int N, uint64_t D, const Frequency& x) {
    require(N >= 0 && D >= 1, "large_sieve_scan: need N >= 0, D >= 1");
    uint64_t evals = 0;
    for (uint64_t d = D; d < 2 * D; ++d) evals += euler_phi(d);
    require_budget(evals <= 1'000'000, "large_sieve_scan: phi-sum exceeds the 10^6 budget");

    // 9 equispaced rationals across (-1/(10 D^2), 1/(10 D^2)) including 0;
    // a grid sup only under-estimates the true sup, which strengthens a
    // satisfied check
    const unsigned long denom = static_cast<unsigned long>(45) * D * D;
    const int64_t nd = static_cast<int64_t>(2 * D - D);
    const double lhs = block_reduce<double>(
        nd, 0.0,
        [&](int64_t di) {
            const uint64_t d = D + static_cast<uint64_t>(di);
            std::vector<double> sups;
            for (uint64_t ell = 0; ell < d; ++ell) {
                if (std::gcd(ell, d) != 1 && d != 1) continue;
                double sup = 0;
                for (int j = -4; j <= 4; ++j) {
                    mpq_class sh(static_cast<long>(ell), static_cast<unsigned long>(d));
                    sh.canonicalize();
                    mpq_class eps(j, denom);
                    eps.canonicalize();
                    const auto v = chat(ds, N, x.plus(sh + eps));
                    sup = std::max(sup, std::abs(v.value));
                }
                sups.push_back(sup);
            }
            return pairwise_sum(sups);
        },
        [](double p, double q) { return p + q; });

    const auto c = ds.constants();
    const double rhs = (static_cast<double>(D) * D + std::pow(ds.base(), N)) *
                       std::pow(c.C0 * std::log(ds.base()), N);
    nlohmann::json ctx{{"op", "large_sieve_scan"}, {"system", ds.spec_string()},
                       {"N", N},                   {"D", D},
                       {"x", x.to_string()},       {"gridPoints", 9}};
    return ratio_bound_report(lhs, rhs, std::move(ctx));
}

BoundReport hybrid_scan(const DigitSystem& ds, int N, uint64_t D, uint64_t B,
                        const Frequency& x) {
    require(N >= 0 && D >= 1 && B >= 1, "hybrid_scan: need N >= 0, D >= 1, B >= 1");
    const auto c = ds.constants();
    require(c.alpha <= 1.0, "hybrid_scan: requires alpha <= 1");
    mpz_class M;
    mpz_ui_pow_ui(M.get_mpz_t(), static_cast<unsigned long>(ds.base()),
                  static_cast<unsigned long>(N));
    require(mpz_class(10 * mpz_class(static_cast<unsigned long>(B)) * D * D) < M,
            "hybrid_scan: hypothesis B < b^N/(10 D^2) violated");
    uint64_t evals = 0;
    for (uint64_t d = D; d < 2 * D; ++d) evals += euler_phi(d) * (2 * B + 1);
    require_budget(evals <= 1'000'000, "hybrid_scan: scan exceeds the 10^6 budget");

    const int64_t nd = static_cast<int64_t>(D);
    const double lhs = block_reduce<double>(
        nd, 0.0,
        [&](int64_t di) {
            const uint64_t d = D + static_cast<uint64_t>(di);
            std::vector<double> mags;
            for (uint64_t ell = 0; ell < d; ++ell) {
                if (std::gcd(ell, d) != 1 && d != 1) continue;
                // grid points m/b^N with |m - b^N ell/d| < B; the integrality
                // condition b^N ell/d + eta in Z holds by construction
                const mpz_class Ml = M * static_cast<unsigned long>(ell);
                const mpz_class Bd = mpz_class(static_cast<unsigned long>(B)) * d;
                mpz_class mlo, mhi;
                mpz_fdiv_q(mlo.get_mpz_t(), mpz_class(Ml - Bd).get_mpz_t(),
                           mpz_class(static_cast<unsigned long>(d)).get_mpz_t());
                mlo += 1;
                mpz_cdiv_q(mhi.get_mpz_t(), mpz_class(Ml + Bd).get_mpz_t(),
                           mpz_class(static_cast<unsigned long>(d)).get_mpz_t());
                mhi -= 1;
                for (mpz_class m = mlo; m <= mhi; ++m) {
                    // strict |eta| < B, exactly: |m d - M ell| < B d
                    if (abs(m * d - Ml) >= Bd) continue;
                    mpq_class sh(m, M);
                    sh.canonicalize();
                    mags.push_back(std::abs(chat(ds, N, x.plus(sh)).value));
                }
            }
            return pairwise_sum(mags);
        },
        [](double p, double q) { return p + q; });

    const double rhs = std::pow(static_cast<double>(ds.allowed_count()), N) *
                       std::pow(static_cast<double>(D) * D * B, c.alpha);
    nlohmann::json ctx{{"op", "hybrid_scan"}, {"system", ds.spec_string()}, {"N", N},
                       {"D", D},              {"B", B},
                       {"x", x.to_string()},  {"alpha", c.alpha}};
    return ratio_bound_report(lhs, rhs, std::move(ctx));
}

BoundReport large_spectra_count(const DigitSystem& ds, int N, const Frequency& theta,
                                int64_t iLo, int64_t iHi, double lambda) {
    require(ds.base() >= 4, "large_spectra_count: requires base >= 4");
    require(lambda >= 1.0, "large_spectra_count: lambda must be >= 1");
    require(iHi >= iLo, "large_spectra_count: empty interval");
    const int64_t size = iHi - iLo + 1;
    require_budget(size <= 1'000'000, "large_spectra_count: interval above the 10^6 budget");
    mpz_class M;
    mpz_ui_pow_ui(M.get_mpz_t(), static_cast<unsigned long>(ds.base()),
                  static_cast<unsigned long>(N));

    const double threshold =
        pow_di(static_cast<double>(ds.allowed_count()), N) / lambda;
    const int64_t block = 1024;
    const int64_t nblocks = (size + block - 1) / block;
    const int64_t count = block_reduce<int64_t>(
        nblocks, 0,
        [&](int64_t bi) {
            int64_t local = 0;
            const int64_t lo = iLo + bi * block;
            const int64_t hi = std::min(iHi, lo + block - 1);
            for (int64_t kk = lo; kk <= hi; ++kk) {
                mpq_class sh(mpz_class(static_cast<long>(kk)), M);
                sh.canonicalize();
                const auto v = chat(ds, N, theta.plus(sh));
                if (std::abs(v.value) >= threshold - v.absErrorBound) ++local;
            }
            return local;
        },
        [](int64_t p, int64_t q) { return p + q; });

    const double b = ds.base();
    const double cb = 4.0 * b * b * b * std::log((b - 2.0) / 2.0);
    const double logRhs =
        (2.0 * std::numbers::ln2 / std::log(b)) * std::log(static_cast<double>(size)) +
        cb * std::log(lambda);
    const double rhs = std::exp(logRhs);

    BoundReport r;
    r.lhs = static_cast<double>(count);
    r.rhs = rhs;
    r.ratio = rhs == 0 ? (count == 0 ? 0.0 : std::numeric_limits<double>::infinity())
                       : static_cast<double>(count) / rhs;
    r.satisfied = count == 0 ||
                  std::log(static_cast<double>(count)) <= logRhs + 1e-9 * std::abs(logRhs) + 1e-12;
    r.context = nlohmann::json{{"op", "large_spectra_count"},
                               {"system", ds.spec_string()},
                               {"N", N},
                               {"theta", theta.to_string()},
                               {"iLo", iLo},
                               {"iHi", iHi},
                               {"lambda", lambda},
                               {"c_b", cb},
                               {"logRhs", logRhs},
                               {"threshold", threshold}};
    return r;
}

}  // namespace restdig
