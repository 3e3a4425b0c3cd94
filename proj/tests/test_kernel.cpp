#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <random>

#include "restdig/kernel.hpp"
#include "restdig/primes.hpp"

using namespace restdig;

namespace {

// oracle: Ramanujan sum as a direct root-of-unity sum
std::complex<double> ramanujan_direct(uint64_t d, int64_t k) {
    std::complex<double> s = 0;
    for (uint64_t l = 0; l < d; ++l) {
        if (std::gcd(l, d) != 1) continue;
        const double a = 2.0 * std::numbers::pi * static_cast<double>(l) *
                         static_cast<double>(k) / static_cast<double>(d);
        s += std::complex<double>(std::cos(a), std::sin(a));
    }
    if (d == 1) s = 1;
    return s;
}

}  // namespace

TEST_CASE("mobius and phi") {
    CHECK(mobius(1) == 1);
    CHECK(mobius(6) == 1);
    CHECK(mobius(12) == 0);
    CHECK(mobius(30) == -1);
    CHECK(euler_phi(1) == 1);
    CHECK(euler_phi(10) == 4);
    CHECK(euler_phi(30) == 8);
    CHECK(euler_phi(997) == 996);
    CHECK_THROWS_AS(factorize(0), PreconditionError);
    CHECK_THROWS_AS(factorize(2'000'000'000'000ull), PreconditionError);
    // remainder above the table is a genuine prime
    const auto fs = factorize(999'999'999'989ull);
    REQUIRE(fs.size() == 1);
    CHECK(fs[0].e == 1);
}

TEST_CASE("uv split") {
    {
        auto [u, v] = uv_split(12, 10);
        CHECK(u == 4);
        CHECK(v == 3);
    }
    {
        auto [u, v] = uv_split(7, 10);
        CHECK(u == 1);
        CHECK(v == 7);
    }
    {
        auto [u, v] = uv_split(40, 10);
        CHECK(u == 40);
        CHECK(v == 1);
    }
}

TEST_CASE("uv split invariants over q <= 10^4, b in 2..36") {
    for (uint64_t b = 2; b <= 36; ++b) {
        for (uint64_t q = 1; q <= 10'000; q += (q < 300 ? 1 : 97)) {
            auto [u, v] = uv_split(q, b);
            CHECK(u * v == q);
            CHECK(std::gcd(v, b) == 1);
            CHECK(radical(b) % radical(u) == 0);
            // every prime of u divides b
            for (const auto& f : factorize(u)) CHECK(b % f.p == 0);
        }
    }
}

TEST_CASE("unit inverse h") {
    CHECK(unit_inverse_h(10, 1) == 0);
    CHECK(unit_inverse_h(10, 3) == 1);
    CHECK(unit_inverse_h(10, 7) == 5);
    CHECK_THROWS_AS(unit_inverse_h(10, 4), PreconditionError);
    for (uint64_t v = 1; v <= 500; ++v) {
        if (std::gcd(v, uint64_t{10}) != 1) continue;
        const uint64_t h = unit_inverse_h(10, v);
        CHECK(h < v);
        if (v > 1) CHECK((10 * h) % v == 1);
    }
}

TEST_CASE("power level L") {
    CHECK(power_level_L(1, 10) == 1);
    CHECK(power_level_L(4, 10) == 2);
    CHECK(power_level_L(8, 10) == 3);
    CHECK(power_level_L(40, 10) == 3);  // 40 | 1000, not 100
    CHECK_THROWS_AS(power_level_L(3, 10), PreconditionError);
}

TEST_CASE("ramanujan sums") {
    CHECK(ramanujan_sum(1, 5) == 1);
    CHECK(ramanujan_sum(6, 2) == -1);
    CHECK(ramanujan_sum(6, 5) == 1);
    CHECK(ramanujan_sum(5, 0) == 4);  // phi(5)
    CHECK(ramanujan_sum(4, -1) == 0);
    for (uint64_t d = 1; d <= 100; ++d) {
        for (uint64_t k = 0; k < d; ++k) {
            const auto direct = ramanujan_direct(d, static_cast<int64_t>(k));
            CHECK(std::abs(direct.imag()) < 1e-9);
            CHECK(std::abs(direct.real() - static_cast<double>(ramanujan_sum(
                                                d, static_cast<int64_t>(k)))) < 1e-9);
        }
    }
}

TEST_CASE("brauer-rademacher identity") {
    {
        const auto br = brauer_rademacher(6, 5);
        CHECK(br.lhs == mpq_class(3));
        CHECK(br.rhs == mpq_class(3));
        CHECK(br.identity_holds);
    }
    {
        const auto br = brauer_rademacher(6, 2);
        CHECK(br.lhs == 0);
        CHECK(br.identity_holds);
    }
    {
        const auto br = brauer_rademacher(1, 123);
        CHECK(br.lhs == 1);
        CHECK(br.identity_holds);
    }
}

TEST_CASE("brauer-rademacher holds exhaustively for j, |k| <= 300") {
    for (uint64_t j = 1; j <= 300; ++j)
        for (int64_t k = -300; k <= 300; k += (j < 40 ? 7 : 91))
            CHECK(brauer_rademacher(j, k).identity_holds);
}

TEST_CASE("convergents") {
    {
        const auto cs = Frequency::golden().convergents(7);
        REQUIRE(cs.size() == 7);
        CHECK(cs[0] == mpq_class(0));
        CHECK(cs[1] == mpq_class(1));
        CHECK(cs[2] == mpq_class(1, 2));
        CHECK(cs[3] == mpq_class(2, 3));
        CHECK(cs[4] == mpq_class(3, 5));
        CHECK(cs[5] == mpq_class(5, 8));
        CHECK(cs[6] == mpq_class(8, 13));
    }
    {
        const auto cs = Frequency::sqrt2().convergents(4);
        CHECK(cs[0] == mpq_class(0));
        CHECK(cs[1] == mpq_class(1, 2));
        CHECK(cs[2] == mpq_class(2, 5));
        CHECK(cs[3] == mpq_class(5, 12));
    }
    {
        // rationals terminate
        const auto cs = Frequency::rational(3, 7).convergents(10);
        REQUIRE(cs.size() == 3);
        CHECK(cs[0] == mpq_class(0));
        CHECK(cs[1] == mpq_class(1, 2));
        CHECK(cs[2] == mpq_class(3, 7));
    }
}

TEST_CASE("dirichlet approximation") {
    {
        const auto ra = dirichlet_approx(Frequency::rational(3, 8), 10);
        CHECK(ra.ell == 3);
        CHECK(ra.d == 8);
        CHECK(ra.beta == 0.0);
    }
    {
        const auto ra = dirichlet_approx(Frequency::golden(), 10);
        CHECK(ra.ell == 5);
        CHECK(ra.d == 8);
        CHECK(std::abs(ra.beta) <= 1.0 / 80.0);
    }
    {
        const auto ra =
            dirichlet_approx(Frequency::rational(1, 2).plus(mpq_class(1, 1'000'000'000)), 3);
        CHECK(ra.ell == 1);
        CHECK(ra.d == 2);
        CHECK(ra.beta == doctest::Approx(1e-9).epsilon(1e-6));
    }
}

TEST_CASE("dirichlet approximation bound holds for random inputs") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> pd(0, 999'983);
    std::uniform_int_distribution<uint64_t> dd(1, 5000);
    for (int i = 0; i < 2000; ++i) {
        const long p = pd(rng);
        const Frequency x = Frequency::rational(p, 999'983);  // prime denominator
        const uint64_t D0 = dd(rng);
        const auto ra = dirichlet_approx(x, D0);
        CHECK(ra.d <= D0);
        CHECK(std::gcd(static_cast<uint64_t>(ra.ell < 0 ? -ra.ell : ra.ell), ra.d) == 1);
        mpq_class betaAbs = ra.beta_exact;
        if (betaAbs < 0) betaAbs = -betaAbs;
        // |beta| <= 1/(d D0)
        CHECK(betaAbs * mpz_class(static_cast<unsigned long>(ra.d * D0)) <= 1);
    }
    // fixed-point inputs go through the same machinery
    const auto ra = dirichlet_approx(Frequency::sqrt2(), 100);
    CHECK(ra.d <= 100);
    mpq_class betaAbs = ra.beta_exact;
    if (betaAbs < 0) betaAbs = -betaAbs;
    CHECK(betaAbs * mpz_class(static_cast<unsigned long>(ra.d * 100)) <= 1);
}

TEST_CASE("kappa decomposition bundles the pieces") {
    const auto kd = kappa_decomposition(12, 10);
    CHECK(kd.u == 4);
    CHECK(kd.v == 3);
    CHECK(kd.h == 1);  // 10 * 1 = 1 (mod 3)
    CHECK(kd.L == 2);
}
