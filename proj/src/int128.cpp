#include "restdig/int128.hpp"

#include <algorithm>

namespace restdig {

std::optional<uint128> checked_pow_u128(uint64_t base, unsigned exp) {
    const uint128 limit = (static_cast<uint128>(1) << 127);
    uint128 r = 1;
    uint128 b = base;
    for (unsigned i = 0; i < exp; ++i) {
        if (b != 0 && r > (limit - 1) / b) return std::nullopt;
        r *= b;
        if (r >= limit) return std::nullopt;
    }
    return r;
}

std::string to_string_u128(uint128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v > 0) {
        s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

std::string to_string_i128(int128 v) {
    if (v < 0) return "-" + to_string_u128(static_cast<uint128>(-v));
    return to_string_u128(static_cast<uint128>(v));
}

}  // namespace restdig
