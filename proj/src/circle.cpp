#include "restdig/circle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "restdig/int128.hpp"
#include "restdig/parallel.hpp"
#include "restdig/primes.hpp"
#include "restdig/riesz.hpp"
#include "restdig/sieve.hpp"

namespace restdig {

namespace {

double pow_di(double base, int e) {
    double r = 1;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

double log_scale(const DigitSystem& ds, int N) {
    return N * std::log(static_cast<double>(ds.base()));  // log(b^N)
}

// Dirichlet-approximation of a/M with the canonical tie-break: the smallest
// convergent denominator d <= D0 with |a/M - l/d| <= 1/(d D0); among equal d
// (possible only at d = 1) the smaller remainder wins.
ArcPoint approx_grid_point(uint64_t a, uint64_t M, uint64_t D0) {
    bool found = false;
    uint64_t bestH = 0, bestK = 1;
    uint128 bestErr = 0;
    auto consider = [&](uint64_t h, uint64_t k) {
        // |a/M - h/k| <= 1/(k D0)  <=>  |a k - M h| D0 <= M
        const int128 diff = static_cast<int128>(a) * k - static_cast<int128>(M) * h;
        const uint128 err =
            diff < 0 ? static_cast<uint128>(-diff) : static_cast<uint128>(diff);
        if (err * D0 > M) return;
        if (!found) {
            bestH = h;
            bestK = k;
            bestErr = err;
            found = true;
        } else if (k == bestK && err < bestErr) {
            bestH = h;
            bestErr = err;
        }
    };

    uint64_t hm1 = 1, km1 = 0, h = 0, k = 1;  // convergent 0/1 (a0 = 0, a < M)
    consider(0, 1);
    uint64_t num = M, den = a;  // partial quotients a1, a2, ... via Euclid
    while (den != 0) {
        const uint64_t qt = num / den;
        const uint64_t rem = num % den;
        const uint64_t h2 = qt * h + hm1, k2 = qt * k + km1;
        hm1 = h;
        h = h2;
        km1 = k;
        k = k2;
        num = den;
        den = rem;
        if (k > D0) break;
        consider(h, k);
        if (found && k > bestK) break;  // larger denominators can no longer win
    }
    require(found, "arc decomposition: no admissible convergent (internal)");

    ArcPoint out;
    out.a = a;
    out.ell = bestH;
    out.d = bestK;
    // eta = a - M ell / d = (a d - M ell)/d, reduced
    const int128 enumr = static_cast<int128>(a) * bestK - static_cast<int128>(M) * bestH;
    const uint64_t eabs = static_cast<uint64_t>(enumr < 0 ? -enumr : enumr);
    const uint64_t g = std::gcd(eabs, bestK) == 0 ? bestK : std::gcd(eabs, bestK);
    out.etaNum = static_cast<int64_t>(enumr / static_cast<int128>(g));
    out.etaDen = static_cast<int64_t>(bestK / g);
    return out;
}

}  // namespace

void arc_decomposition_stream(const DigitSystem& ds, int N, uint64_t D0,
                              const std::function<void(const ArcPoint&)>& fn) {
    require(D0 >= 1, "arc_decomposition: D0 must be positive");
    const uint128 m128 = ds.power_bound(N);
    require_budget(m128 <= 10'000'000, "arc_decomposition: b^N above the 10^7 budget");
    const uint64_t M = static_cast<uint64_t>(m128);
    for (uint64_t a = 0; a < M; ++a) fn(approx_grid_point(a, M, D0));
}

ArcDecomposition arc_decomposition(const DigitSystem& ds, int N, uint64_t D0) {
    require(D0 >= 1, "arc_decomposition: D0 must be positive");
    const uint128 m128 = ds.power_bound(N);
    require_budget(m128 <= 10'000'000, "arc_decomposition: b^N above the 10^7 budget");
    const uint64_t M = static_cast<uint64_t>(m128);
    ArcDecomposition out;
    out.N = N;
    out.M = M;
    out.D0 = D0;
    out.points.resize(M);
    parallel_for(static_cast<int64_t>(M), 8192, [&](int64_t lo, int64_t hi) {
        for (int64_t a = lo; a < hi; ++a)
            out.points[static_cast<size_t>(a)] =
                approx_grid_point(static_cast<uint64_t>(a), M, D0);
    });
    return out;
}

double minimal_Aprime(double A, double alpha) {
    require(A > 0, "minimal_Aprime: A must be positive");
    if (alpha >= 0.2)
        throw PreconditionError(
            "minimal_Aprime: alpha = " + std::to_string(alpha) +
            " >= 1/5, so the arc-cutoff coupling A' > 4 + 2A/(1/5 - alpha) is unsatisfiable "
            "for this digit system");
    return 4.0 + 2.0 * A / (0.2 - alpha) + 1e-6;
}

namespace {

struct KernelTable {
    std::vector<std::complex<double>> roots;  // e(j/M)
    uint64_t M;

    explicit KernelTable(uint64_t m) : M(m) {
        roots.resize(m);
        parallel_for(static_cast<int64_t>(m), 65536, [&](int64_t lo, int64_t hi) {
            for (int64_t j = lo; j < hi; ++j)
                roots[static_cast<size_t>(j)] =
                    unit_exp(static_cast<double>(j) / static_cast<double>(m));
        });
    }

    // K(eta) = sum_{k<M} e(-k eta / M), summed directly
    std::complex<double> kernel(int64_t eta) const {
        const uint64_t step = static_cast<uint64_t>(((eta % static_cast<int64_t>(M)) +
                                                     static_cast<int64_t>(M)) %
                                                    static_cast<int64_t>(M));
        std::complex<double> acc = 0;
        uint64_t idx = 0;
        for (uint64_t k = 0; k < M; ++k) {
            acc += std::conj(roots[idx]);
            idx += step;
            if (idx >= M) idx -= M;
        }
        return acc;
    }
};

// x must sit on the b^N grid; returns its numerator j0 with x = j0 / M.
mpq_class grid_value(const Frequency& x, uint64_t M) {
    require(x.grid_compatible(mpz_class(static_cast<unsigned long>(M))),
            "inversion: x must be a b^N-grid frequency");
    return x.as_rational();
}

}  // namespace

BoundReport inversion_complete(const DigitSystem& ds, int N, const Frequency& theta,
                               const Frequency& x) {
    const uint128 m128 = ds.power_bound(N);
    require_budget(m128 <= 100'000, "inversion_complete: b^N above the 10^5 budget");
    const uint64_t M = static_cast<uint64_t>(m128);
    const mpq_class xq = grid_value(x, M);

    const KernelTable table(M);
    const int64_t lo = -static_cast<int64_t>(M / 2);
    const int64_t hi = lo + static_cast<int64_t>(M) - 1;  // J has exactly M points

    const int64_t block = 16;
    const int64_t nblocks = (static_cast<int64_t>(M) + block - 1) / block;
    const std::complex<double> lhs = block_reduce<std::complex<double>>(
        nblocks, {0.0, 0.0},
        [&](int64_t bi) {
            std::vector<std::complex<double>> terms;
            const int64_t e0 = lo + bi * block;
            const int64_t e1 = std::min(hi, e0 + block - 1);
            for (int64_t eta = e0; eta <= e1; ++eta) {
                mpq_class sh = xq + mpq_class(mpz_class(static_cast<long>(eta)),
                                              mpz_class(static_cast<unsigned long>(M)));
                sh.canonicalize();
                terms.push_back(chat(ds, N, theta.plus(sh)).value * table.kernel(eta));
            }
            return pairwise_sum(terms);
        },
        [](std::complex<double> a, std::complex<double> b) { return a + b; });

    const std::complex<double> rhs =
        static_cast<double>(M) * chat(ds, N, theta.plus(xq)).value;
    const double scale = static_cast<double>(M) * pow_di(ds.allowed_count(), N);
    const double deviation = std::abs(lhs - rhs) / scale;

    nlohmann::json ctx{{"op", "inversion_complete"},
                       {"system", ds.spec_string()},
                       {"N", N},
                       {"theta", theta.to_string()},
                       {"x", x.to_string()},
                       {"lhsRe", lhs.real()},
                       {"lhsIm", lhs.imag()},
                       {"rhsRe", rhs.real()},
                       {"rhsIm", rhs.imag()}};
    return exact_bound_report(deviation, 1e-8, std::move(ctx));
}

TruncatedInversion inversion_truncated(const DigitSystem& ds, int N, const Frequency& theta,
                                       const Frequency& x, double Bexp, double A) {
    const uint128 m128 = ds.power_bound(N);
    require_budget(m128 <= 100'000, "inversion_truncated: b^N above the 10^5 budget");
    const uint64_t M = static_cast<uint64_t>(m128);
    const mpq_class xq = grid_value(x, M);

    const double windowD = std::pow(log_scale(ds, N), Bexp);
    const int64_t halfJ = static_cast<int64_t>(M / 2);
    const int64_t W = std::min<int64_t>(
        halfJ, windowD >= static_cast<double>(halfJ) ? halfJ
                                                     : static_cast<int64_t>(windowD));

    const KernelTable table(M);
    std::vector<std::complex<double>> terms;
    for (int64_t eta = -W; eta <= W; ++eta) {
        if (eta < -static_cast<int64_t>(M / 2) || eta > static_cast<int64_t>(M) - 1 - static_cast<int64_t>(M / 2))
            continue;  // stay inside the completed window J
        if (std::abs(static_cast<double>(eta)) >= windowD && eta != 0) continue;  // strict |eta| < log^B
        mpq_class sh = xq + mpq_class(mpz_class(static_cast<long>(eta)),
                                      mpz_class(static_cast<unsigned long>(M)));
        sh.canonicalize();
        terms.push_back(chat(ds, N, theta.plus(sh)).value * table.kernel(eta));
    }

    TruncatedInversion out;
    out.window = W;
    out.truncated = pairwise_sum(std::span<const std::complex<double>>(terms));
    out.reference = static_cast<double>(M) * chat(ds, N, theta.plus(xq)).value;
    out.deviation = std::abs(out.truncated - out.reference);
    out.budget = pow_di(ds.allowed_count(), N) * static_cast<double>(M) /
                 std::pow(log_scale(ds, N), A);
    nlohmann::json ctx{{"op", "inversion_truncated"}, {"system", ds.spec_string()},
                       {"N", N},                      {"theta", theta.to_string()},
                       {"x", x.to_string()},          {"Bexp", Bexp},
                       {"A", A},                      {"window", out.window}};
    out.report = ratio_bound_report(out.deviation, out.budget, std::move(ctx));
    return out;
}

std::complex<double> reduced_main_term_cutoff(const DigitSystem& ds, int N,
                                              const Frequency& theta, double cutoff) {
    require(cutoff > 0, "reduced_main_term: cutoff must be positive");
    require_budget(cutoff <= 10'000, "reduced_main_term: cutoff above the 10^4 arc budget");
    ds.power_bound(N);
    // largest d with d < cutoff
    uint64_t dmax = static_cast<uint64_t>(std::ceil(cutoff)) - 1;
    if (static_cast<double>(dmax) >= cutoff) --dmax;  // exact-integer cutoff is exclusive
    if (dmax == 0) return {0.0, 0.0};

    return block_reduce<std::complex<double>>(
        static_cast<int64_t>(dmax), {0.0, 0.0},
        [&](int64_t di) -> std::complex<double> {
            const uint64_t d = static_cast<uint64_t>(di) + 1;
            const int mu = mobius(d);
            if (mu == 0) return {0.0, 0.0};
            std::vector<std::complex<double>> terms;
            for (uint64_t ell = 0; ell < d; ++ell) {
                if (std::gcd(ell, d) != 1) continue;
                mpq_class sh(static_cast<unsigned long>(ell), static_cast<unsigned long>(d));
                sh.canonicalize();
                terms.push_back(chat(ds, N, theta.plus(sh)).value);
            }
            const double coef = static_cast<double>(mu) / static_cast<double>(euler_phi(d));
            return coef * pairwise_sum(std::span<const std::complex<double>>(terms));
        },
        [](std::complex<double> a, std::complex<double> b) { return a + b; });
}

std::complex<double> reduced_main_term(const DigitSystem& ds, int N, const Frequency& theta,
                                       const ReductionParameters& params) {
    const double alpha = ds.constants().alpha;
    const double aprime = params.Aprime > 0 ? params.Aprime : minimal_Aprime(params.A, alpha);
    return reduced_main_term_cutoff(ds, N, theta, std::pow(log_scale(ds, N), aprime));
}

ReductionComparison compare_direct_vs_reduced(const DigitSystem& ds, int N,
                                              const Frequency& theta,
                                              const ReductionParameters& params) {
    ReductionComparison out;
    const double alpha = ds.constants().alpha;
    out.alphaBelowFifth = alpha < 0.2;
    const double aprime = params.Aprime > 0 ? params.Aprime : minimal_Aprime(params.A, alpha);
    out.cutoff = std::pow(log_scale(ds, N), aprime);
    out.direct = lambda_exp_sum(ds, N, theta);
    out.reduced = reduced_main_term_cutoff(ds, N, theta, out.cutoff);
    out.discrepancy = std::abs(out.direct - out.reduced) / pow_di(ds.allowed_count(), N);
    return out;
}

namespace {

// |Lambda^(-m/M)| and the transform value share the m-grid; both direct.
std::complex<double> lambda_hat_at(const std::vector<LambdaSite>& sites, uint64_t M,
                                   int64_t m) {
    const uint64_t mm = static_cast<uint64_t>(((m % static_cast<int64_t>(M)) +
                                               static_cast<int64_t>(M)) %
                                              static_cast<int64_t>(M));
    std::vector<std::complex<double>> terms;
    terms.reserve(sites.size());
    for (const auto& s : sites) {
        const uint64_t r = mulmod_u64(s.n % M, mm, M);
        // e(-n m / M)
        const double ang = r == 0 ? 0.0
                                  : (static_cast<double>(M - r) / static_cast<double>(M));
        terms.push_back(s.logp * unit_exp(ang));
    }
    return pairwise_sum(std::span<const std::complex<double>>(terms));
}

}  // namespace

std::pair<BoundReport, BoundReport> minor_arc_report(const DigitSystem& ds, int N, uint64_t D,
                                                     uint64_t B, uint64_t D0,
                                                     const Frequency& theta) {
    require(D >= 1 && B >= 1 && D0 >= 1, "minor_arc_report: D, B, D0 must be positive");
    require(D <= D0, "minor_arc_report: hypothesis D <= D0 violated");
    const uint128 m128 = ds.power_bound(N);
    require_budget(m128 <= 10'000'000, "minor_arc_report: b^N above the 10^7 budget");
    const uint64_t M = static_cast<uint64_t>(m128);
    require(static_cast<uint128>(D0) * D0 <= m128,
            "minor_arc_report: hypothesis D0 <= b^{N/2} violated");
    require(static_cast<uint128>(B) * D0 * D <= m128,
            "minor_arc_report: hypothesis B <= b^N/(D0 D) violated");

    const auto sites = lambda_sites(M);

    // (d, ell) tasks
    std::vector<std::pair<uint64_t, uint64_t>> tasks;
    for (uint64_t d = D; d < 2 * D; ++d)
        for (uint64_t ell = 0; ell < d; ++ell)
            if (std::gcd(ell, d) == 1) tasks.emplace_back(d, ell);
    require_budget(tasks.size() * (4 * B + 3) * sites.size() <= 2'000'000'000ull,
                   "minor_arc_report: double-sum budget exceeded");

    auto sum_over = [&](bool dyadic) {
        // dyadic: B < |eta| <= 2B; otherwise |eta| <= 1
        return block_reduce<double>(
            static_cast<int64_t>(tasks.size()), 0.0,
            [&](int64_t ti) {
                const auto [d, ell] = tasks[static_cast<size_t>(ti)];
                std::vector<double> vals;
                const int128 Ml = static_cast<int128>(M) * ell;
                // integers m with eta = m - M ell / d in range; the slop of 2
                // is harmless because of the exact filter below
                const int128 span = dyadic ? static_cast<int128>(2 * B) * d
                                           : static_cast<int128>(d);
                const int128 mlo = (Ml - span) / static_cast<int128>(d) - 2;
                const int128 mhi = (Ml + span) / static_cast<int128>(d) + 2;
                for (int128 m = mlo; m <= mhi; ++m) {
                    const int128 etaNumD = m * static_cast<int128>(d) - Ml;
                    const int128 absEta = etaNumD < 0 ? -etaNumD : etaNumD;
                    if (dyadic) {
                        if (!(absEta > static_cast<int128>(B) * d &&
                              absEta <= static_cast<int128>(2 * B) * d))
                            continue;
                    } else {
                        if (absEta > d) continue;  // |eta| <= 1
                    }
                    mpq_class sh(mpz_class(static_cast<long>(m)),
                                 mpz_class(static_cast<unsigned long>(M)));
                    sh.canonicalize();
                    const double cmag = std::abs(chat(ds, N, theta.plus(sh)).value);
                    const double lmag =
                        std::abs(lambda_hat_at(sites, M, static_cast<int64_t>(m)));
                    vals.push_back(cmag * lmag);
                }
                return pairwise_sum(vals);
            },
            [](double a, double b) { return a + b; });
    };

    const double lhs1 = sum_over(true);
    const double lhs2 = sum_over(false);

    const auto c = ds.constants();
    const double bsN = pow_di(ds.allowed_count(), N);
    const double bN = pow_di(ds.base(), N);
    const double n4 = pow_di(static_cast<double>(N), 4);
    const double d2b = static_cast<double>(D) * D * B;
    const double rhs1 =
        n4 * bN * bsN *
        (std::pow(d2b, c.alpha - 0.2) + std::pow(ds.base(), c.alpha * N) / std::sqrt(D0));
    const double rhs2 = n4 * bN * bsN *
                        (std::pow(static_cast<double>(D), c.alpha - 0.2) +
                         std::pow(static_cast<double>(D), 2 * c.alpha + 0.5) /
                             std::pow(ds.base(), N / 2.0));

    nlohmann::json base{{"system", ds.spec_string()}, {"N", N},
                        {"D", D},                     {"B", B},
                        {"D0", D0},                   {"theta", theta.to_string()},
                        {"alpha", c.alpha},           {"alphaBelowFifth", c.alpha < 0.2}};
    nlohmann::json c1 = base;
    c1["op"] = "minor_arc_dyadic_eta";
    nlohmann::json c2 = base;
    c2["op"] = "minor_arc_unit_eta";
    return {ratio_bound_report(lhs1, rhs1, std::move(c1)),
            ratio_bound_report(lhs2, rhs2, std::move(c2))};
}

ExceptionalScan exceptional_rational_scan(const DigitSystem& ds, int N, const Frequency& theta,
                                          double Aprime) {
    require(N >= 1, "exceptional_rational_scan: N must be >= 1");
    require(Aprime > 0, "exceptional_rational_scan: Aprime must be positive");
    ExceptionalScan out;
    out.cutoff = std::pow(log_scale(ds, N), Aprime);
    require_budget(out.cutoff <= 10'000, "exceptional_rational_scan: cutoff above 10^4");
    const double bsN = pow_di(ds.allowed_count(), N);
    out.threshold = bsN * std::exp(-std::pow(N, 2.0 / 3.0) / ds.base());

    const uint64_t b = static_cast<uint64_t>(ds.base());
    std::vector<std::pair<uint64_t, uint64_t>> tasks;  // (u, v)
    uint64_t evals = 0;
    for (uint64_t u : divisors(b)) {
        if (mobius(u) == 0) continue;
        for (uint64_t v = 1; static_cast<double>(v) < out.cutoff / static_cast<double>(u);
             ++v) {
            if (std::gcd(v, b) != 1) continue;
            tasks.emplace_back(u, v);
            evals += euler_phi(u * v);
        }
    }
    require_budget(evals <= 2'000'000, "exceptional_rational_scan: scan budget exceeded");

    out.hits = block_reduce<std::vector<ExceptionalHit>>(
        static_cast<int64_t>(tasks.size()), {},
        [&](int64_t ti) {
            const auto [u, v] = tasks[static_cast<size_t>(ti)];
            const uint64_t m = u * v;
            std::vector<ExceptionalHit> local;
            for (uint64_t ell = 0; ell < m; ++ell) {
                if (std::gcd(ell, m) != 1) continue;
                mpq_class sh(static_cast<unsigned long>(ell), static_cast<unsigned long>(m));
                sh.canonicalize();
                const double mag = std::abs(chat(ds, N, theta.plus(sh)).value);
                if (mag > out.threshold) local.push_back({u, v, ell, mag});
            }
            return local;
        },
        [](std::vector<ExceptionalHit> a, std::vector<ExceptionalHit> b) {
            a.insert(a.end(), b.begin(), b.end());
            return a;
        });

    for (uint64_t u : divisors(b)) {
        uint64_t seen = 0;
        bool any = false;
        for (const auto& hit : out.hits) {
            if (hit.u != u) continue;
            if (!any) {
                seen = hit.v;
                any = true;
            } else if (hit.v != seen) {
                out.uniqueVPerU = false;
            }
        }
    }
    return out;
}

BoundReport arc_reduction_check(const DigitSystem& ds, int N, uint64_t d, uint64_t ell,
                                double Cexp) {
    require(d >= 1 && d <= 100, "arc_reduction_check: need 1 <= d <= 100");
    require(ell < d || (d == 1 && ell == 0), "arc_reduction_check: need 0 <= ell < d");
    require(std::gcd(ell, d) == 1, "arc_reduction_check: gcd(ell, d) must be 1");
    const uint128 m128 = ds.power_bound(N);
    require_budget(m128 <= 100'000'000, "arc_reduction_check: b^N above the 10^8 budget");
    const uint64_t M = static_cast<uint64_t>(m128);

    // root table for e(-n ell / d)
    std::vector<std::complex<double>> roots(d);
    for (uint64_t j = 0; j < d; ++j)
        roots[j] = unit_exp(static_cast<double>(j) / static_cast<double>(d));

    const std::complex<double> lhs = segment_reduce<std::complex<double>>(
        M, {0.0, 0.0},
        [&](const SieveSegment& seg) {
            std::vector<std::complex<double>> terms;
            seg.for_each_site([&](const SieveSegment::Site& s) {
                const uint64_t r = d == 1 ? 0 : (s.n % d) * ell % d;
                terms.push_back(std::log(static_cast<double>(s.p)) *
                                std::conj(roots[r]));
            });
            return pairwise_sum(terms);
        },
        [](std::complex<double> a, std::complex<double> b) { return a + b; });

    const int mu = mobius(d);
    const double main = static_cast<double>(mu) / static_cast<double>(euler_phi(d)) *
                        static_cast<double>(M);
    const double deviation = std::abs(lhs - std::complex<double>(main, 0.0));
    const double scale = static_cast<double>(M) / std::pow(std::log(static_cast<double>(M)), Cexp);

    nlohmann::json ctx{{"op", "arc_reduction_check"},
                       {"system", ds.spec_string()},
                       {"N", N},
                       {"d", d},
                       {"ell", ell},
                       {"C", Cexp},
                       {"mu", mu},
                       {"lhsRe", lhs.real()},
                       {"lhsIm", lhs.imag()},
                       {"mainTerm", main}};
    return ratio_bound_report(deviation, scale, std::move(ctx));
}

}  // namespace restdig
