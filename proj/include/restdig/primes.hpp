#pragma once

#include <cstdint>
#include <vector>

namespace restdig {

// Shared prime table, all primes below 10^6. Built once on first use;
// safe to call from any thread afterwards.
const std::vector<uint32_t>& small_primes();

struct PrimeFactor {
    uint64_t p;
    int e;
};

// Trial division against the shared table. Accepts n in [1, 10^12].
std::vector<PrimeFactor> factorize(uint64_t n);

int mobius(uint64_t n);
uint64_t euler_phi(uint64_t n);
uint64_t radical(uint64_t n);
std::vector<uint64_t> divisors(uint64_t n);  // sorted ascending

}  // namespace restdig
