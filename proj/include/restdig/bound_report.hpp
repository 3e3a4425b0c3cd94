#pragma once

#include <string>

#include <json.hpp>

namespace restdig {

// Paired (computed LHS, formula RHS) for an inequality check. Two flavors:
// exact inequalities compare lhs <= rhs up to a 1e-9 relative float
// tolerance; one-sided "<<" estimates have an unknown implied constant, so
// `satisfied` only records ratio <= a declared reference constant and is a
// regression device, not a mathematical claim.
struct BoundReport {
    double lhs = 0;
    double rhs = 0;
    double ratio = 0;
    bool satisfied = false;
    nlohmann::json context;

    nlohmann::json to_json() const;
    std::string csv_row() const;  // lhs,rhs,ratio,satisfied
    static std::string csv_header();
};

inline constexpr double kFloatBoundTolerance = 1e-9;  // relative
inline constexpr double kReferenceConstant = 10.0;    // for "<<" reports

BoundReport exact_bound_report(double lhs, double rhs, nlohmann::json context);
BoundReport ratio_bound_report(double lhs, double rhs, nlohmann::json context,
                               double reference = kReferenceConstant);

}  // namespace restdig
