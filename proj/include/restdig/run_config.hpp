#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "restdig/digit_system.hpp"
#include "restdig/frequency.hpp"

namespace restdig {

// Flat bag of every CLI parameter with a canonical space-separated
// "key=value" form; parse(canonical()) is the identity.
struct RunConfig {
    std::string subcommand = "digits";
    int base = 10;
    std::string exclude;
    int N = 1;
    int nmin = 1, nmax = 1;
    uint64_t q = 1, t = 0, m = 1;
    uint64_t D = 1, B = 1, D0 = 0;
    double epsilon = 0.01;
    double A = 2, Aprime = 0, Bexp = 2, Cexp = 2;
    double lambda = 1;
    int64_t ilo = 0, ihi = 0;
    uint64_t limit = 100;
    uint64_t ell = 0, d = 1;
    int qidx = 1;
    std::string theta = "0/1";
    std::string x = "0/1";
    std::string set;
    std::string kind = "l1";
    std::string format = "json";
    int workers = 0;
    uint64_t seed = 1;

    std::string canonical() const;
    static RunConfig parse(const std::string& line);

    DigitSystem digit_system() const;
    nlohmann::json to_json() const;
};

Frequency theta_parse(const std::string& spec);

// "arith:<start>:<step>:<limit>" or "file:<path>" (newline-delimited
// integers; sorted and deduplicated).
std::vector<uint64_t> parse_set_spec(const std::string& spec);

}  // namespace restdig
