#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "restdig/digit_system.hpp"

using namespace restdig;

namespace {

// oracle: digit-by-digit scan by repeated division
bool contains_oracle(int base, const std::vector<int>& excluded, uint64_t n) {
    auto bad = [&](int d) {
        return std::find(excluded.begin(), excluded.end(), d) != excluded.end();
    };
    if (n == 0) return !bad(0);
    while (n > 0) {
        if (bad(static_cast<int>(n % static_cast<unsigned>(base)))) return false;
        n /= static_cast<unsigned>(base);
    }
    return true;
}

// oracle: count maximal runs by linear scan
int run_count_oracle(const std::vector<int>& excluded_sorted) {
    int k = 0;
    for (size_t i = 0; i < excluded_sorted.size(); ++i)
        if (i == 0 || excluded_sorted[i] != excluded_sorted[i - 1] + 1) ++k;
    return k;
}

DigitSystem random_system(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> bdist(2, 36);
    const int b = bdist(rng);
    std::vector<int> excluded;
    std::uniform_int_distribution<int> coin(0, 3);
    for (int d = 0; d < b; ++d)
        if (coin(rng) == 0) excluded.push_back(d);
    if (static_cast<int>(excluded.size()) == b) excluded.pop_back();
    return DigitSystem(b, excluded);
}

}  // namespace

TEST_CASE("construction and validation") {
    DigitSystem ds(10, {7});
    CHECK(ds.allowed() == std::vector<int>{0, 1, 2, 3, 4, 5, 6, 8, 9});
    CHECK(ds.constants().s == 1);
    CHECK(ds.constants().k == 1);

    DigitSystem all(10, {});
    CHECK(all.constants().s == 0);
    CHECK(all.constants().k == 0);

    DigitSystem runs(10, {3, 4, 5, 8});
    CHECK(runs.constants().k == 2);

    CHECK_THROWS_AS(DigitSystem(1, {}), PreconditionError);
    CHECK_THROWS_AS(DigitSystem(10, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9}), PreconditionError);
    CHECK_THROWS_AS(DigitSystem(10, {10}), PreconditionError);
    CHECK_THROWS_AS(DigitSystem(10, {-1}), PreconditionError);
    CHECK_THROWS_AS(DigitSystem(10, {3, 3}), PreconditionError);
}

TEST_CASE("contains") {
    DigitSystem ds(10, {7});
    CHECK(ds.contains(uint64_t{11}));
    CHECK_FALSE(ds.contains(uint64_t{17}));
    CHECK_FALSE(ds.contains(uint64_t{700}));
    CHECK(ds.contains(uint64_t{0}));

    DigitSystem noz(10, {0});
    CHECK_FALSE(noz.contains(uint64_t{0}));
    CHECK(noz.contains(uint64_t{111}));
    CHECK_FALSE(noz.contains(uint64_t{101}));
}

TEST_CASE("contains agrees with the digit-scan oracle on random inputs") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 20; ++trial) {
        const DigitSystem ds = random_system(rng);
        std::uniform_int_distribution<uint64_t> ndist(0, 1'000'000'000'000ull);
        for (int i = 0; i < 5000; ++i) {
            const uint64_t n = ndist(rng);
            CHECK(ds.contains(n) == contains_oracle(ds.base(), ds.excluded(), n));
        }
    }
}

TEST_CASE("enumerate") {
    DigitSystem ds(10, {7});
    const auto v1 = ds.enumerate_vec(1);
    CHECK(v1 == std::vector<uint128>{0, 1, 2, 3, 4, 5, 6, 8, 9});
    CHECK(ds.enumerate_vec(2).size() == 81);

    DigitSystem ones(2, {0});
    const auto v3 = ones.enumerate_vec(3);
    REQUIRE(v3.size() == 1);
    CHECK(v3[0] == 7);  // only the all-ones string survives

    CHECK(ds.enumerate_vec(0) == std::vector<uint128>{0});
}

TEST_CASE("enumerate is sorted, in range, and matches count for random systems") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        const DigitSystem ds = random_system(rng);
        std::uniform_int_distribution<int> ndist(0, 4);
        const int N = ndist(rng);
        const auto v = ds.enumerate_vec(N);
        CHECK(static_cast<uint128>(v.size()) == ds.count(N));
        CHECK(std::is_sorted(v.begin(), v.end()));
        const uint128 bound = ds.power_bound(N);
        for (uint128 n : v) {
            CHECK(n < bound);
            // the N = 0 empty string is the value 0, a member only if 0 in A
            if (N > 0) CHECK(ds.contains(n));
        }
    }
    // exhaustive cross-check at fixed small shapes up to N = 8; with 0
    // allowed, the length-N strings are exactly the members below b^N
    DigitSystem ds(3, {1});
    for (int N = 0; N <= 8; ++N) {
        const auto v = ds.enumerate_vec(N);
        CHECK(static_cast<uint128>(v.size()) == ds.count(N));
        uint64_t direct = 0;
        for (uint64_t n = 0; n < static_cast<uint64_t>(ds.power_bound(N)); ++n)
            if (ds.contains(n)) ++direct;
        CHECK(direct == v.size());
    }
}

TEST_CASE("count overflow is rejected, not wrapped") {
    DigitSystem ds(10, {7});
    CHECK(ds.count(0) == 1);
    CHECK(ds.count(3) == 729);
    DigitSystem tiny(4, {2, 3});
    CHECK(tiny.count(5) == 32);
    CHECK_THROWS_AS(ds.count(40), PreconditionError);  // 10^40 >= 2^127
    CHECK_THROWS_AS(ds.enumerate_vec(40), PreconditionError);
}

TEST_CASE("structural constants") {
    DigitSystem ds(10, {7});
    const auto c = ds.constants();
    CHECK(c.s == 1);
    CHECK(c.sPrime == 1);
    CHECK(c.k == 1);
    CHECK(c.C0 == doctest::Approx(2.0 + 18.0 / (10.0 * std::log(10.0))).epsilon(1e-12));
    CHECK(c.C0 == doctest::Approx(2.7817).epsilon(1e-4));
    CHECK(c.alpha ==
          doctest::Approx(std::log(c.C0 * (10.0 / 9.0) * std::log(10.0)) / std::log(10.0))
              .epsilon(1e-12));
    CHECK(c.alpha == doctest::Approx(0.852).epsilon(1e-3));

    const auto full = DigitSystem(10, {}).constants();
    CHECK(full.C0 == doctest::Approx(1.0 + 2.0 / std::log(10.0)).epsilon(1e-12));
    CHECK(full.C0 == doctest::Approx(1.8686).epsilon(1e-4));

    const auto cs = DigitSystem(10, {2, 5}).constants();
    CHECK(cs.sPrime == 0);  // 2 and 5 divide 10
}

TEST_CASE("run count matches the linear-scan oracle") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        const DigitSystem ds = random_system(rng);
        CHECK(ds.constants().k == run_count_oracle(ds.excluded()));
    }
}

TEST_CASE("alpha decreases in b for the full digit set") {
    double prev = 1e9;
    for (int b = 4; b <= 100; ++b) {
        const double a = DigitSystem(b, {}).constants().alpha;
        CHECK(a < prev);
        prev = a;
    }
}

TEST_CASE("condition report") {
    DigitSystem ds(10, {7});
    const auto r = ds.check_conditions(0.01);
    CHECK(r.hasOne);
    CHECK(r.intervalCount == 1);
    CHECK_FALSE(r.densityOk);  // 9 < 2 * 10^0.81 ~ 12.9

    CHECK(DigitSystem(10, {0}).check_conditions(0.01).hasOne);
    CHECK(DigitSystem(10, {0}).check_conditions(0.01).intervalCount == 1);
    CHECK_FALSE(DigitSystem(10, {1}).check_conditions(0.5).hasOne);
    CHECK_THROWS_AS(ds.check_conditions(0.0), PreconditionError);
    CHECK_THROWS_AS(ds.check_conditions(-1.0), PreconditionError);
}

TEST_CASE("consecutive pair detection") {
    CHECK(DigitSystem(10, {7}).has_consecutive_pair());
    CHECK_FALSE(DigitSystem(4, {1, 3}).has_consecutive_pair());  // A = {0, 2}
}

TEST_CASE("spec string round trip") {
    for (const auto* s :
         {"b=10;exclude=7", "b=10;exclude=", "b=10;exclude=3-5,8", "b=36;exclude=0,9-12,35"}) {
        const DigitSystem ds = DigitSystem::parse_spec(s);
        CHECK(ds.spec_string() == s);
    }
    CHECK_THROWS_AS(DigitSystem::parse_spec("nonsense"), PreconditionError);
    CHECK_THROWS_AS(DigitSystem::parse_spec("b=x;exclude="), PreconditionError);
    CHECK_THROWS_AS(DigitSystem::parse_spec("b=10;exclude=5-3"), PreconditionError);
}
