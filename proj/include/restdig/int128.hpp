#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace restdig {

using uint128 = unsigned __int128;
using int128 = __int128;

// b^n, or nullopt if the result would reach 2^127.
std::optional<uint128> checked_pow_u128(uint64_t base, unsigned exp);

// (a * b) mod m for m < 2^64.
inline uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>((static_cast<uint128>(a) * b) % m);
}

std::string to_string_u128(uint128 v);
std::string to_string_i128(int128 v);

}  // namespace restdig
