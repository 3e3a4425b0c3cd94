#pragma once

#include <stdexcept>
#include <string>

namespace restdig {

// Violated mathematical or API precondition. CLI maps this to exit code 2.
class PreconditionError : public std::runtime_error {
public:
    explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

// Request exceeds a declared enumeration/scan budget. CLI maps this to exit code 3.
class BudgetError : public std::runtime_error {
public:
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

// A frequency representation does not carry enough guard bits for the
// requested number of product levels. Treated as a precondition violation.
class PrecisionError : public PreconditionError {
public:
    explicit PrecisionError(const std::string& what) : PreconditionError(what) {}
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw PreconditionError(msg);
}

inline void require_budget(bool cond, const std::string& msg) {
    if (!cond) throw BudgetError(msg);
}

}  // namespace restdig
