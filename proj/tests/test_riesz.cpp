#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "restdig/riesz.hpp"

using namespace restdig;

namespace {

// oracle: direct sum over the enumerated members, exact argument reduction
std::complex<double> chat_bruteforce(const DigitSystem& ds, int N, const mpq_class& theta) {
    std::complex<double> s = 0;
    const mpz_class q = theta.get_den();
    const mpz_class p = theta.get_num();
    ds.enumerate(N, [&](uint128 n) {
        mpz_class nz(static_cast<unsigned long>(n));
        mpz_class r = (nz * p) % q;
        if (r < 0) r += q;
        mpq_class ang(r, q);
        ang.canonicalize();
        const double a = 2.0 * std::numbers::pi * mpq_get_d(ang.get_mpq_t());
        s += std::complex<double>(std::cos(a), std::sin(a));
    });
    return s;
}

DigitSystem random_system(std::mt19937_64& rng, int bmax = 16) {
    std::uniform_int_distribution<int> bdist(2, bmax);
    const int b = bdist(rng);
    std::vector<int> excluded;
    std::uniform_int_distribution<int> coin(0, 3);
    for (int d = 0; d < b; ++d)
        if (coin(rng) == 0) excluded.push_back(d);
    if (static_cast<int>(excluded.size()) == b) excluded.pop_back();
    return DigitSystem(b, excluded);
}

Frequency random_theta(std::mt19937_64& rng) {
    switch (rng() % 4) {
        case 0: {
            std::uniform_int_distribution<long> pd(0, 999'999);
            return Frequency::rational(pd(rng), 1'000'003);
        }
        case 1: {
            mpz_class man = (mpz_class(rng()) << 64) | mpz_class(rng());
            mpz_fdiv_r_2exp(man.get_mpz_t(), man.get_mpz_t(), 160);
            return Frequency::fixed_point(man, 160);
        }
        case 2:
            return Frequency::golden().plus(mpq_class(static_cast<long>(rng() % 97), 97));
        default:
            return Frequency::sqrt2().plus(mpq_class(static_cast<long>(rng() % 101), 101));
    }
}

}  // namespace

TEST_CASE("chat at simple frequencies") {
    DigitSystem ds(10, {7});
    {
        const auto v = chat(ds, 3, Frequency());
        CHECK(v.value.real() == doctest::Approx(729.0).epsilon(1e-12));
        CHECK(v.value.imag() == 0.0);
    }
    {
        const auto v = chat(ds, 1, Frequency::rational(1, 2));
        CHECK(v.value.real() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(v.value.imag()) < 1e-12);
    }
    {
        const auto v = chat(ds, 2, Frequency::rational(1, 4));
        CHECK(v.value.real() == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(v.value.imag() == doctest::Approx(2.0).epsilon(1e-10));
    }
    CHECK(chat(ds, 0, Frequency::rational(1, 3)).value == std::complex<double>(1.0, 0.0));
}

TEST_CASE("chat against direct summation, fixed cases") {
    std::mt19937_64 rng(2024);
    DigitSystem ds(10, {7});
    for (int N = 1; N <= 4; ++N) {
        for (int i = 0; i < 20; ++i) {
            std::uniform_int_distribution<long> pd(0, 9999);
            mpq_class theta(pd(rng), 10'007);
            theta.canonicalize();
            const auto fast = chat(ds, N, Frequency::rational(theta));
            const auto slow = chat_bruteforce(ds, N, theta);
            CHECK(std::abs(fast.value - slow) < 1e-6);
        }
    }
}

TEST_CASE("chat against direct summation, random systems") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 60; ++trial) {
        const DigitSystem ds = random_system(rng, 12);
        int N = 1;
        while (ds.power_bound(N + 1) <= 100'000 && N < 8) ++N;
        std::uniform_int_distribution<long> pd(0, 99'990);
        mpq_class theta(pd(rng), 99'991);
        theta.canonicalize();
        const auto fast = chat(ds, N, Frequency::rational(theta));
        const auto slow = chat_bruteforce(ds, N, theta);
        CHECK(std::abs(fast.value - slow) < 1e-6);
    }
}

TEST_CASE("chat near-singular fallback stays accurate") {
    DigitSystem ds(10, {3, 4, 5, 8});
    // every level argument sits near zero, forcing the direct branch
    mpq_class theta(1, 1'000'000);
    const auto fast = chat(ds, 3, Frequency::rational(theta));
    const auto slow = chat_bruteforce(ds, 3, theta);
    CHECK(std::abs(fast.value - slow) < 1e-6);
}

TEST_CASE("chat error bound sanity") {
    DigitSystem ds(10, {7});
    const auto v = chat(ds, 10, Frequency::golden());
    CHECK(v.absErrorBound >= 0);
    CHECK(std::abs(v.value) <= std::pow(9.0, 10) + v.absErrorBound);
}

TEST_CASE("chat multiplicativity across level splits") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 25; ++trial) {
        const DigitSystem ds = random_system(rng, 10);
        std::uniform_int_distribution<int> Nd(0, 8);
        const int N = Nd(rng);
        std::uniform_int_distribution<int> n1d(0, N);
        const int n1 = n1d(rng);
        std::uniform_int_distribution<long> pd(0, 9972);
        mpq_class theta(pd(rng), 9973);
        theta.canonicalize();

        const auto whole = chat(ds, N, Frequency::rational(theta));
        const auto left = chat(ds, N - n1, Frequency::rational(theta));
        // b^{N-n1} theta mod 1
        mpz_class shift;
        mpz_ui_pow_ui(shift.get_mpz_t(), static_cast<unsigned long>(ds.base()),
                      static_cast<unsigned long>(N - n1));
        mpq_class scaled(theta.get_num() * shift, theta.get_den());
        scaled.canonicalize();
        const auto right = chat(ds, n1, Frequency::rational(scaled));
        const double tol =
            1e-9 * std::pow(ds.allowed_count(), N) + whole.absErrorBound +
            std::abs(left.value) * right.absErrorBound +
            std::abs(right.value) * left.absErrorBound + 1e-9;
        CHECK(std::abs(whole.value - left.value * right.value) <= tol);
    }
}

TEST_CASE("conjugate symmetry") {
    std::mt19937_64 rng(13);
    DigitSystem ds(10, {2, 7});
    for (int i = 0; i < 30; ++i) {
        std::uniform_int_distribution<long> pd(0, 9972);
        const Frequency theta = Frequency::rational(pd(rng), 9973);
        const auto a = chat(ds, 5, theta);
        const auto b = chat(ds, 5, theta.negated());
        CHECK(std::abs(b.value - std::conj(a.value)) < 1e-9 * std::abs(a.value) + 1e-9);
    }
}

TEST_CASE("envelope") {
    DigitSystem ds(10, {7});
    CHECK(envelope(ds, 3, Frequency()) == doctest::Approx(729.0));
    CHECK(envelope(ds, 1, Frequency::rational(1, 2)) == doctest::Approx(2.0));
    CHECK(envelope(ds, 2, Frequency::rational(1, 4)) == doctest::Approx(8.0));
}

TEST_CASE("decay envelope") {
    DigitSystem ds(10, {7});
    CHECK(decay_envelope(ds, 2, Frequency()) == doctest::Approx(81.0));
    CHECK(decay_envelope(ds, 1, Frequency::rational(1, 2)) ==
          doctest::Approx(9.0 * std::exp(-1.0 / 40.0)).epsilon(1e-12));
    DigitSystem gap(4, {1, 3});  // A = {0, 2}: no consecutive pair
    CHECK_THROWS_AS(decay_envelope(gap, 1, Frequency()), PreconditionError);
}

TEST_CASE("transform magnitude sits below both envelopes") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 1500; ++trial) {
        const DigitSystem ds = random_system(rng);
        std::uniform_int_distribution<int> Nd(0, 10);
        const int N = Nd(rng);
        const Frequency theta = random_theta(rng);
        const auto v = chat(ds, N, theta);
        CHECK(std::abs(v.value) <= envelope(ds, N, theta) + v.absErrorBound + 1e-9);
        if (ds.has_consecutive_pair())
            CHECK(std::abs(v.value) <=
                  decay_envelope(ds, N, theta) + v.absErrorBound + 1e-9);
    }
}

TEST_CASE("l1 scan") {
    DigitSystem ds(10, {7});
    {
        const auto rep = l1_scan(ds, 0, Frequency());
        CHECK(rep.lhs == doctest::Approx(1.0));
        CHECK(rep.rhs == doctest::Approx(1.0));
        CHECK(rep.satisfied);
    }
    {
        const auto rep = l1_scan(ds, 1, Frequency());
        double expect = 0;
        for (int a = 0; a < 10; ++a)
            expect += std::abs(chat(ds, 1, Frequency::rational(a, 10)).value);
        CHECK(rep.lhs == doctest::Approx(expect).epsilon(1e-12));
        CHECK(rep.rhs == doctest::Approx(2.78172 * 10 * std::log(10.0)).epsilon(1e-4));
        CHECK(rep.satisfied);
    }
    {
        const auto rep = l1_scan(ds, 4, Frequency::parse("dec:0.123"));
        CHECK(rep.satisfied);
        CHECK(rep.ratio > 0);
    }
    CHECK_THROWS_AS(l1_scan(ds, 8, Frequency()), BudgetError);
}

TEST_CASE("large sieve scan") {
    DigitSystem ds(10, {7});
    {
        const auto rep = large_sieve_scan(ds, 2, 2, Frequency());
        // d in {2, 3}: sup over the grid is at least the eps = 0 value
        double lower = std::abs(chat(ds, 2, Frequency::rational(1, 2)).value);
        for (int l = 1; l <= 2; ++l)
            lower += std::abs(chat(ds, 2, Frequency::rational(l, 3)).value);
        CHECK(rep.lhs >= lower - 1e-9);
        CHECK(rep.context["gridPoints"] == 9);
    }
    {
        // D^2 > b^N: rhs dominated by the D^2 term, report still produced
        const auto rep = large_sieve_scan(ds, 1, 30, Frequency());
        CHECK(rep.rhs >
              30.0 * 30.0 * std::pow(ds.constants().C0 * std::log(10.0), 1) * 0.99);
    }
    {
        const auto rep = large_sieve_scan(ds, 3, 4, Frequency::parse("dec:0.3"));
        CHECK(rep.ratio > 0);  // recorded for regression
    }
}

TEST_CASE("hybrid scan") {
    DigitSystem ds(10, {7});
    {
        const auto rep = hybrid_scan(ds, 4, 2, 10, Frequency());
        CHECK(rep.lhs > 0);
        CHECK(rep.rhs == doctest::Approx(std::pow(9.0, 4) *
                                         std::pow(4.0 * 10.0, ds.constants().alpha)));
    }
    // hypothesis B < b^N/(10 D^2) violated
    CHECK_THROWS_AS(hybrid_scan(ds, 2, 2, 10, Frequency()), PreconditionError);
    {
        DigitSystem full(10, {});
        const auto rep = hybrid_scan(full, 4, 2, 3, Frequency());
        CHECK(rep.context["alpha"].get<double>() ==
              doctest::Approx(full.constants().alpha));
    }
}

TEST_CASE("hybrid scan handles non-integer eta arcs") {
    // d = 3 does not divide 10^2, so eta runs over thirds; every frequency
    // evaluated is still a grid point m/100
    DigitSystem ds(10, {7});
    const auto rep = hybrid_scan(ds, 2, 3, 3, Frequency());
    CHECK(rep.lhs > 0);
}

TEST_CASE("large spectra count") {
    DigitSystem ds(10, {7});
    {
        const auto rep = large_spectra_count(ds, 3, Frequency(), -50, 50, 1.0);
        CHECK(rep.lhs >= 1.0);  // k = 0 attains (b-s)^N
        CHECK(rep.satisfied);
    }
    {
        const auto rep = large_spectra_count(ds, 4, Frequency(), -100, 100, 2.0);
        CHECK(rep.satisfied);
        CHECK(rep.context["c_b"].get<double>() ==
              doctest::Approx(4000.0 * std::log(4.0)).epsilon(1e-12));
    }
    {
        const auto rep = large_spectra_count(ds, 3, Frequency::golden(), -500, 500, 1e6);
        CHECK(rep.lhs <= 1001.0);
        CHECK(rep.satisfied);  // rhs astronomically large
    }
    DigitSystem tiny(3, {1});
    CHECK_THROWS_AS(large_spectra_count(tiny, 2, Frequency(), 0, 10, 1.0),
                    PreconditionError);
}
