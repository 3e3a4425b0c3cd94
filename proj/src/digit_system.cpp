#include "restdig/digit_system.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace restdig {

DigitSystem::DigitSystem(int base, std::vector<int> excluded_digits) : base_(base) {
    require(base >= 2, "digit system: base must be >= 2");
    std::sort(excluded_digits.begin(), excluded_digits.end());
    require(std::adjacent_find(excluded_digits.begin(), excluded_digits.end()) ==
                excluded_digits.end(),
            "digit system: duplicate excluded digit");
    for (int d : excluded_digits)
        require(d >= 0 && d < base, "digit system: excluded digit out of range");
    require(static_cast<int>(excluded_digits.size()) < base,
            "digit system: excluding every digit leaves an empty set");
    excluded_ = std::move(excluded_digits);

    digit_mask_.assign(static_cast<size_t>(base), true);
    for (int d : excluded_) digit_mask_[static_cast<size_t>(d)] = false;
    for (int d = 0; d < base; ++d)
        if (digit_mask_[static_cast<size_t>(d)]) allowed_.push_back(d);
}

bool DigitSystem::contains(uint128 n) const {
    if (n == 0) return digit_mask_[0];
    const auto b = static_cast<unsigned>(base_);
    while (n > 0) {
        if (!digit_mask_[static_cast<size_t>(n % b)]) return false;
        n /= b;
    }
    return true;
}

uint128 DigitSystem::power_bound(int N) const {
    require(N >= 0, "power_bound: N must be nonnegative");
    auto p = checked_pow_u128(static_cast<uint64_t>(base_), static_cast<unsigned>(N));
    require(p.has_value(), "b^N reaches 2^127; rejected rather than wrapped");
    return *p;
}

uint128 DigitSystem::count(int N) const {
    power_bound(N);
    auto c = checked_pow_u128(static_cast<uint64_t>(allowed_.size()), static_cast<unsigned>(N));
    return *c;  // (b-s)^N <= b^N, so the width check above suffices
}

std::vector<uint128> DigitSystem::enumerate_vec(int N) const {
    std::vector<uint128> out;
    enumerate(N, [&](uint128 v) { out.push_back(v); });
    return out;
}

StructuralConstants DigitSystem::constants() const {
    StructuralConstants c;
    c.s = static_cast<int>(excluded_.size());
    for (int d : excluded_)
        if (std::gcd(d, base_) == 1) ++c.sPrime;
    for (size_t i = 0; i < excluded_.size(); ++i)
        if (i == 0 || excluded_[i] != excluded_[i - 1] + 1) ++c.k;
    const double b = base_;
    const double bs = static_cast<double>(allowed_.size());
    c.C0 = c.k + 1 + 2.0 * bs / (b * std::log(b));
    c.alpha = std::log(c.C0 * (b / bs) * std::log(b)) / std::log(b);
    return c;
}

ConditionReport DigitSystem::check_conditions(double epsilon) const {
    require(epsilon > 0, "check_conditions: epsilon must be positive");
    const StructuralConstants c = constants();
    ConditionReport r;
    r.hasOne = digit_mask_.size() > 1 && digit_mask_[1];
    r.intervalCount = c.k;
    r.densityOk = static_cast<double>(allowed_.size()) >
                  (c.k + 1) * std::pow(static_cast<double>(base_), 0.8 + epsilon);
    r.alphaBelowFifth = c.alpha < 0.2;
    return r;
}

bool DigitSystem::has_consecutive_pair() const {
    for (size_t i = 1; i < allowed_.size(); ++i)
        if (allowed_[i] == allowed_[i - 1] + 1) return true;
    return false;
}

std::string DigitSystem::spec_string() const {
    std::ostringstream os;
    os << "b=" << base_ << ";exclude=";
    size_t i = 0;
    bool first = true;
    while (i < excluded_.size()) {
        size_t j = i;
        while (j + 1 < excluded_.size() && excluded_[j + 1] == excluded_[j] + 1) ++j;
        if (!first) os << ',';
        first = false;
        if (j == i)
            os << excluded_[i];
        else
            os << excluded_[i] << '-' << excluded_[j];
        i = j + 1;
    }
    return os.str();
}

DigitSystem DigitSystem::parse_spec(const std::string& spec) {
    const std::string bkey = "b=";
    const std::string ekey = ";exclude=";
    auto epos = spec.find(ekey);
    require(spec.rfind(bkey, 0) == 0 && epos != std::string::npos,
            "digit system spec must look like b=<int>;exclude=<list>");
    int base = 0;
    try {
        base = std::stoi(spec.substr(bkey.size(), epos - bkey.size()));
    } catch (const std::exception&) {
        throw PreconditionError("digit system spec: bad base");
    }
    std::vector<int> excluded;
    std::string list = spec.substr(epos + ekey.size());
    std::istringstream is(list);
    std::string item;
    while (std::getline(is, item, ',')) {
        if (item.empty()) continue;
        auto dash = item.find('-');
        try {
            if (dash == std::string::npos) {
                excluded.push_back(std::stoi(item));
            } else {
                int lo = std::stoi(item.substr(0, dash));
                int hi = std::stoi(item.substr(dash + 1));
                require(lo <= hi, "digit system spec: empty range");
                for (int d = lo; d <= hi; ++d) excluded.push_back(d);
            }
        } catch (const PreconditionError&) {
            throw;
        } catch (const std::exception&) {
            throw PreconditionError("digit system spec: bad digit list");
        }
    }
    return DigitSystem(base, std::move(excluded));
}

}  // namespace restdig
