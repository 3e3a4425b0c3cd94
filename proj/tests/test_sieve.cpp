#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "restdig/parallel.hpp"
#include "restdig/sieve.hpp"

using namespace restdig;

namespace {

// oracle: trial-division von Mangoldt, independent of the sieve machinery
double naive_lambda(uint64_t n) {
    if (n < 2) return 0;
    uint64_t p = 0, m = n;
    for (uint64_t f = 2; f * f <= m; ++f) {
        if (m % f == 0) {
            p = f;
            while (m % f == 0) m /= f;
            break;
        }
    }
    if (p == 0) return std::log(static_cast<double>(n));  // n prime
    if (m != 1) return 0;                                 // two distinct primes
    return std::log(static_cast<double>(p));
}

bool naive_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t f = 2; f * f <= n; ++f)
        if (n % f == 0) return false;
    return true;
}

}  // namespace

TEST_CASE("sieve segments") {
    {
        const auto seg = sieve_range(0, 10);
        std::set<uint64_t> primes, powers;
        seg.for_each_site([&](const SieveSegment::Site& s) {
            (s.j == 1 ? primes : powers).insert(s.n);
        });
        CHECK(primes == std::set<uint64_t>{2, 3, 5, 7});
        CHECK(powers == std::set<uint64_t>{4, 8, 9});
    }
    {
        const auto seg = sieve_range(90, 100);
        std::vector<uint64_t> primes;
        seg.for_each_site([&](const SieveSegment::Site& s) {
            if (s.j == 1) primes.push_back(s.n);
        });
        CHECK(primes == std::vector<uint64_t>{97});
    }
    {
        const auto seg = sieve_range(0, 2);
        int count = 0;
        seg.for_each_site([&](const SieveSegment::Site&) { ++count; });
        CHECK(count == 0);
    }
    CHECK_THROWS_AS(sieve_range(5, 5), PreconditionError);
    CHECK_THROWS_AS(sieve_range(0, kSieveLimit + 1), BudgetError);
}

TEST_CASE("segment sites carry the exact von Mangoldt data") {
    const auto seg = sieve_range(0, 3000);
    std::vector<double> lambda(3000, 0.0);
    uint64_t prev = 0;
    bool ascending = true;
    seg.for_each_site([&](const SieveSegment::Site& s) {
        if (s.n <= prev && prev != 0) ascending = false;
        prev = s.n;
        uint64_t pj = 1;
        for (uint32_t i = 0; i < s.j; ++i) pj *= s.p;
        CHECK(pj == s.n);
        lambda[s.n] = std::log(static_cast<double>(s.p));
    });
    CHECK(ascending);
    for (uint64_t n = 0; n < 3000; ++n)
        CHECK(lambda[n] == doctest::Approx(naive_lambda(n)).epsilon(1e-12));
}

TEST_CASE("is_prime agrees with trial division across a segment boundary") {
    const uint64_t lo = (1ull << 22) - 50, hi = (1ull << 22) + 50;
    const auto seg = sieve_range(lo, hi);
    for (uint64_t n = lo; n < hi; ++n) CHECK(seg.is_prime(n) == naive_prime(n));
}

TEST_CASE("lambda weighted sum examples") {
    {
        DigitSystem full(10, {});
        const double s = lambda_weighted_sum(full, 1, {1, 0});
        const double expect = 3 * std::log(2.0) + 2 * std::log(3.0) + std::log(5.0) +
                              std::log(7.0);  // psi(10)
        CHECK(s == doctest::Approx(expect).epsilon(1e-12));
    }
    {
        DigitSystem ds(10, {7});
        // the excluded sites below 100 are exactly 7, 17, 27, 37, 47, 49, 67,
        // 71, 73, 79, 97
        double expect = 0;
        for (uint64_t n = 0; n < 100; ++n)
            if (ds.contains(n)) expect += naive_lambda(n);
        CHECK(lambda_weighted_sum(ds, 2, {1, 0}) == doctest::Approx(expect).epsilon(1e-12));
    }
    {
        DigitSystem ds(10, {7});
        CHECK(lambda_weighted_sum(ds, 1, {2, 0}) ==
              doctest::Approx(3 * std::log(2.0)).epsilon(1e-12));  // 2, 4, 8
    }
}

TEST_CASE("residue classes partition the lambda sum") {
    DigitSystem ds(10, {7});
    for (uint64_t q : {2ull, 3ull, 7ull, 12ull}) {
        double parts = 0;
        for (uint64_t t = 0; t < q; ++t) parts += lambda_weighted_sum(ds, 5, {q, t});
        const double whole = lambda_weighted_sum(ds, 5, {1, 0});
        CHECK(parts == doctest::Approx(whole).epsilon(1e-12));
    }
}

TEST_CASE("restricted prime streams") {
    DigitSystem ds(10, {7});
    {
        const auto ps = restricted_primes_vec(ds, 100, {1, 0});
        CHECK(ps.size() == 16);  // 25 primes below 100 minus 9 with a digit 7
        for (uint64_t p : ps) {
            CHECK(naive_prime(p));
            CHECK(ds.contains(p));
        }
        CHECK(std::is_sorted(ps.begin(), ps.end()));
    }
    {
        const auto ps = restricted_primes_vec(ds, 100, {10, 1});
        CHECK(ps == std::vector<uint64_t>{11, 31, 41, 61});  // 71 excluded by digit
    }
    CHECK(restricted_primes_vec(ds, 2, {1, 0}).empty());
    CHECK(restricted_prime_count(ds, 100, {1, 0}) == 16);
}

TEST_CASE("lambda exponential sum") {
    DigitSystem ds(10, {7});
    {
        const auto z = lambda_exp_sum(ds, 3, Frequency());
        CHECK(z.real() == doctest::Approx(lambda_weighted_sum(ds, 3, {1, 0})).epsilon(1e-12));
        CHECK(z.imag() == 0.0);
    }
    {
        // theta = 1/2: sites below 10 in C are 2,3,4,5,8,9
        const auto z = lambda_exp_sum(ds, 1, Frequency::rational(1, 2));
        const double expect = 3 * std::log(2.0) - 2 * std::log(3.0) - std::log(5.0);
        CHECK(z.real() == doctest::Approx(expect).epsilon(1e-12));
        CHECK(std::abs(z.imag()) < 1e-12);
    }
    {
        const auto a = lambda_exp_sum(ds, 2, Frequency::rational(1, 1));  // reduces to 0
        const auto b = lambda_exp_sum(ds, 2, Frequency());
        CHECK(a == b);
    }
}

TEST_CASE("orthogonality decomposition of the exponential sum") {
    DigitSystem ds(10, {7});
    for (uint64_t q : {3ull, 5ull, 12ull}) {
        for (uint64_t p = 1; p < q; ++p) {
            if (std::gcd(p, q) != 1) continue;
            const auto direct =
                lambda_exp_sum(ds, 4, Frequency::rational(static_cast<long>(p), q));
            std::complex<double> recomposed = 0;
            for (uint64_t t = 0; t < q; ++t) {
                const double ang = 2.0 * std::numbers::pi *
                                   static_cast<double>((t * p) % q) / static_cast<double>(q);
                recomposed += std::complex<double>(std::cos(ang), std::sin(ang)) *
                              lambda_weighted_sum(ds, 4, {q, t});
            }
            CHECK(std::abs(direct - recomposed) <=
                  1e-6 * std::max(1.0, std::abs(direct)));
        }
    }
}

TEST_CASE("chebyshev psi stays near x") {
    for (uint64_t x : {10'000ull, 100'000ull, 1'000'000ull}) {
        const double err = std::abs(chebyshev_psi(x) - static_cast<double>(x));
        const double bound = 3.0 * std::sqrt(static_cast<double>(x)) *
                             std::pow(std::log(static_cast<double>(x)), 2);
        CHECK(err < bound);
    }
}

TEST_CASE("lambda fourier check") {
    {
        RationalApprox ra;
        ra.ell = 1;
        ra.d = 2;
        ra.beta = 0;
        ra.beta_exact = 0;
        ra.D0 = 10;
        const auto rep = lambda_fourier_check(1000, ra);
        // direct alternating sum oracle
        double expect = 0;
        for (uint64_t n = 0; n < 1000; ++n)
            expect += naive_lambda(n) * (n % 2 == 0 ? 1.0 : -1.0);
        CHECK(rep.lhs == doctest::Approx(std::abs(expect)).epsilon(1e-9));
        CHECK_FALSE(rep.context["middleTermApplicable"].get<bool>());
    }
    {
        // golden-ratio convergent 610/987 plus the true remainder
        const auto ra = dirichlet_approx(Frequency::golden(), 1000);
        CHECK(ra.d == 987);
        const auto rep = lambda_fourier_check(10'000, ra);
        CHECK(rep.lhs > 0);
        CHECK(rep.context["middleTermApplicable"].get<bool>());
    }
    {
        RationalApprox ra;  // alpha = 0
        ra.ell = 0;
        ra.d = 1;
        ra.beta = 0;
        ra.beta_exact = 0;
        ra.D0 = 1;
        const auto rep = lambda_fourier_check(10, ra);
        CHECK(rep.lhs == doctest::Approx(chebyshev_psi(10)).epsilon(1e-12));
    }
    {
        RationalApprox bad;
        bad.ell = 1;
        bad.d = 3;
        bad.beta = 0.5;
        bad.beta_exact = mpq_class(1, 2);  // violates |beta| < 1/9
        const auto call = [&] { return lambda_fourier_check(100, bad); };
        CHECK_THROWS_AS(call(), PreconditionError);
    }
}

TEST_CASE("worker count does not change sums bitwise") {
    DigitSystem ds(10, {7});
    set_worker_count(1);
    const double s1 = lambda_weighted_sum(ds, 6, {3, 1});
    const auto z1 = lambda_exp_sum(ds, 6, Frequency::golden());
    set_worker_count(4);
    const double s4 = lambda_weighted_sum(ds, 6, {3, 1});
    const auto z4 = lambda_exp_sum(ds, 6, Frequency::golden());
    set_worker_count(0);
    CHECK(s1 == s4);
    CHECK(z1 == z4);
}
