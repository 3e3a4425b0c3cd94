#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "restdig/errors.hpp"
#include "restdig/int128.hpp"

namespace restdig {

struct StructuralConstants {
    int s = 0;       // excluded digit count
    int sPrime = 0;  // excluded digits coprime to the base
    int k = 0;       // maximal runs of consecutive excluded digits
    double C0 = 0;   // k + 1 + 2(b-s)/(b ln b)
    double alpha = 0;  // ln(C0 * b/(b-s) * ln b) / ln b
};

struct ConditionReport {
    bool hasOne = false;    // digit 1 allowed
    int intervalCount = 0;  // k; the interval condition is always satisfiable
    bool densityOk = false;  // b - s > (k+1) * b^{4/5+eps}
    bool alphaBelowFifth = false;
};

// Base-b integers whose digits all lie in an allowed set. Immutable; all
// operations are pure and thread-safe.
class DigitSystem {
public:
    DigitSystem(int base, std::vector<int> excluded_digits);

    int base() const { return base_; }
    const std::vector<int>& allowed() const { return allowed_; }
    const std::vector<int>& excluded() const { return excluded_; }
    int allowed_count() const { return static_cast<int>(allowed_.size()); }  // b - s

    bool digit_allowed(int d) const { return digit_mask_[static_cast<size_t>(d)]; }
    bool contains(uint128 n) const;
    bool contains(uint64_t n) const { return contains(static_cast<uint128>(n)); }

    // b^N as 128-bit, rejecting b^N >= 2^127.
    uint128 power_bound(int N) const;
    // (b - s)^N; same width policy as power_bound.
    uint128 count(int N) const;

    // Members of C in [0, b^N) in increasing order: every length-N digit
    // string over the allowed set. If 0 is excluded, shorter numbers are
    // absent automatically.
    template <class F>
    void enumerate(int N, F&& fn) const;
    std::vector<uint128> enumerate_vec(int N) const;

    StructuralConstants constants() const;
    ConditionReport check_conditions(double epsilon) const;

    // True when the allowed set contains d, d+1 for some d.
    bool has_consecutive_pair() const;

    // Canonical form "b=<int>;exclude=<comma list or a-b ranges>".
    std::string spec_string() const;
    static DigitSystem parse_spec(const std::string& spec);

private:
    int base_;
    std::vector<int> allowed_;
    std::vector<int> excluded_;
    std::vector<bool> digit_mask_;
};

template <class F>
void DigitSystem::enumerate(int N, F&& fn) const {
    require(N >= 0, "enumerate: N must be nonnegative");
    power_bound(N);  // width check
    if (N == 0) {
        fn(static_cast<uint128>(0));
        return;
    }
    std::vector<uint128> place(static_cast<size_t>(N));
    place[0] = 1;
    for (int i = 1; i < N; ++i) place[static_cast<size_t>(i)] = place[static_cast<size_t>(i - 1)] * static_cast<unsigned>(base_);

    const size_t m = allowed_.size();
    std::vector<size_t> idx(static_cast<size_t>(N), 0);
    uint128 value = 0;
    for (int i = 0; i < N; ++i) value += static_cast<unsigned>(allowed_[0]) * place[static_cast<size_t>(i)];

    for (;;) {
        fn(value);
        int i = 0;
        while (i < N && idx[static_cast<size_t>(i)] == m - 1) {
            value -= static_cast<unsigned>(allowed_[m - 1] - allowed_[0]) * place[static_cast<size_t>(i)];
            idx[static_cast<size_t>(i)] = 0;
            ++i;
        }
        if (i == N) break;
        size_t& j = idx[static_cast<size_t>(i)];
        ++j;
        value += static_cast<unsigned>(allowed_[j] - allowed_[j - 1]) * place[static_cast<size_t>(i)];
    }
}

}  // namespace restdig
