#include "restdig/bound_report.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace restdig {

nlohmann::json BoundReport::to_json() const {
    nlohmann::json j;
    j["lhs"] = lhs;
    j["rhs"] = std::isfinite(rhs) ? nlohmann::json(rhs) : nlohmann::json("inf");
    j["ratio"] = std::isfinite(ratio) ? nlohmann::json(ratio) : nlohmann::json(nullptr);
    j["satisfied"] = satisfied;
    j["context"] = context;
    return j;
}

std::string BoundReport::csv_header() { return "lhs,rhs,ratio,satisfied"; }

std::string BoundReport::csv_row() const {
    std::ostringstream os;
    os.precision(17);
    os << lhs << ',' << rhs << ',' << ratio << ',' << (satisfied ? 1 : 0);
    return os.str();
}

BoundReport exact_bound_report(double lhs, double rhs, nlohmann::json context) {
    BoundReport r;
    r.lhs = lhs;
    r.rhs = rhs;
    r.ratio = rhs == 0 ? (lhs == 0 ? 0.0 : std::numeric_limits<double>::infinity()) : lhs / rhs;
    r.satisfied = lhs <= rhs * (1 + kFloatBoundTolerance) + 1e-300;
    r.context = std::move(context);
    return r;
}

BoundReport ratio_bound_report(double lhs, double rhs, nlohmann::json context,
                               double reference) {
    BoundReport r;
    r.lhs = lhs;
    r.rhs = rhs;
    r.ratio = rhs == 0 ? (lhs == 0 ? 0.0 : std::numeric_limits<double>::infinity()) : lhs / rhs;
    r.satisfied = r.ratio <= reference;
    r.context = std::move(context);
    r.context["referenceConstant"] = reference;
    return r;
}

}  // namespace restdig
