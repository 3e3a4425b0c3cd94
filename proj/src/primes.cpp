#include "restdig/primes.hpp"

#include <algorithm>
#include <mutex>

#include "restdig/errors.hpp"

namespace restdig {

namespace {
constexpr uint32_t kTableLimit = 1'000'000;
constexpr uint64_t kFactorLimit = 1'000'000'000'000ull;  // 10^12
}  // namespace

const std::vector<uint32_t>& small_primes() {
    static const std::vector<uint32_t> table = [] {
        std::vector<bool> comp(kTableLimit, false);
        std::vector<uint32_t> out;
        for (uint32_t i = 2; i < kTableLimit; ++i) {
            if (comp[i]) continue;
            out.push_back(i);
            for (uint64_t j = static_cast<uint64_t>(i) * i; j < kTableLimit; j += i)
                comp[static_cast<size_t>(j)] = true;
        }
        return out;
    }();
    return table;
}

std::vector<PrimeFactor> factorize(uint64_t n) {
    require(n >= 1, "factorize: n must be positive");
    require(n <= kFactorLimit, "factorize: inputs above 10^12 rejected");
    std::vector<PrimeFactor> fs;
    for (uint32_t p : small_primes()) {
        if (static_cast<uint64_t>(p) * p > n) break;
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            fs.push_back({p, e});
        }
    }
    if (n > 1) fs.push_back({n, 1});  // remainder is prime: no factor <= 10^6
    return fs;
}

int mobius(uint64_t n) {
    const auto fs = factorize(n);
    for (const auto& f : fs)
        if (f.e > 1) return 0;
    return fs.size() % 2 == 0 ? 1 : -1;
}

uint64_t euler_phi(uint64_t n) {
    uint64_t r = n;
    for (const auto& f : factorize(n)) r -= r / f.p;
    return r;
}

uint64_t radical(uint64_t n) {
    uint64_t r = 1;
    for (const auto& f : factorize(n)) r *= f.p;
    return r;
}

std::vector<uint64_t> divisors(uint64_t n) {
    std::vector<uint64_t> ds{1};
    for (const auto& f : factorize(n)) {
        const size_t sz = ds.size();
        uint64_t pe = 1;
        for (int e = 1; e <= f.e; ++e) {
            pe *= f.p;
            for (size_t i = 0; i < sz; ++i) ds.push_back(ds[i] * pe);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

}  // namespace restdig
