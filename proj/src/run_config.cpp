#include "restdig/run_config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "restdig/errors.hpp"

namespace restdig {

namespace {

std::string fmt_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

std::string RunConfig::canonical() const {
    std::ostringstream os;
    os << "cmd=" << subcommand << " base=" << base << " exclude=" << exclude << " N=" << N
       << " nmin=" << nmin << " nmax=" << nmax << " q=" << q << " t=" << t << " m=" << m
       << " D=" << D << " B=" << B << " D0=" << D0 << " epsilon=" << fmt_double(epsilon)
       << " A=" << fmt_double(A) << " Aprime=" << fmt_double(Aprime)
       << " Bexp=" << fmt_double(Bexp) << " Cexp=" << fmt_double(Cexp)
       << " lambda=" << fmt_double(lambda) << " ilo=" << ilo << " ihi=" << ihi
       << " limit=" << limit << " ell=" << ell << " d=" << d << " qidx=" << qidx
       << " theta=" << theta << " x=" << x << " set=" << set << " kind=" << kind
       << " format=" << format << " workers=" << workers << " seed=" << seed;
    return os.str();
}

RunConfig RunConfig::parse(const std::string& line) {
    RunConfig c;
    std::istringstream is(line);
    std::string item;
    while (is >> item) {
        const auto eq = item.find('=');
        require(eq != std::string::npos, "run config: expected key=value, got '" + item + "'");
        const std::string key = item.substr(0, eq);
        const std::string val = item.substr(eq + 1);
        try {
            if (key == "cmd") c.subcommand = val;
            else if (key == "base") c.base = std::stoi(val);
            else if (key == "exclude") c.exclude = val;
            else if (key == "N") c.N = std::stoi(val);
            else if (key == "nmin") c.nmin = std::stoi(val);
            else if (key == "nmax") c.nmax = std::stoi(val);
            else if (key == "q") c.q = std::stoull(val);
            else if (key == "t") c.t = std::stoull(val);
            else if (key == "m") c.m = std::stoull(val);
            else if (key == "D") c.D = std::stoull(val);
            else if (key == "B") c.B = std::stoull(val);
            else if (key == "D0") c.D0 = std::stoull(val);
            else if (key == "epsilon") c.epsilon = std::stod(val);
            else if (key == "A") c.A = std::stod(val);
            else if (key == "Aprime") c.Aprime = std::stod(val);
            else if (key == "Bexp") c.Bexp = std::stod(val);
            else if (key == "Cexp") c.Cexp = std::stod(val);
            else if (key == "lambda") c.lambda = std::stod(val);
            else if (key == "ilo") c.ilo = std::stoll(val);
            else if (key == "ihi") c.ihi = std::stoll(val);
            else if (key == "limit") c.limit = std::stoull(val);
            else if (key == "ell") c.ell = std::stoull(val);
            else if (key == "d") c.d = std::stoull(val);
            else if (key == "qidx") c.qidx = std::stoi(val);
            else if (key == "theta") c.theta = val;
            else if (key == "x") c.x = val;
            else if (key == "set") c.set = val;
            else if (key == "kind") c.kind = val;
            else if (key == "format") c.format = val;
            else if (key == "workers") c.workers = std::stoi(val);
            else if (key == "seed") c.seed = std::stoull(val);
            else throw PreconditionError("run config: unknown key '" + key + "'");
        } catch (const PreconditionError&) {
            throw;
        } catch (const std::exception&) {
            throw PreconditionError("run config: bad value for '" + key + "'");
        }
    }
    return c;
}

DigitSystem RunConfig::digit_system() const {
    return DigitSystem::parse_spec("b=" + std::to_string(base) + ";exclude=" + exclude);
}

nlohmann::json RunConfig::to_json() const {
    return nlohmann::json{{"cmd", subcommand}, {"base", base},     {"exclude", exclude},
                          {"N", N},            {"nmin", nmin},     {"nmax", nmax},
                          {"q", q},            {"t", t},           {"m", m},
                          {"D", D},            {"B", B},           {"D0", D0},
                          {"epsilon", epsilon}, {"A", A},          {"Aprime", Aprime},
                          {"Bexp", Bexp},      {"Cexp", Cexp},     {"lambda", lambda},
                          {"ilo", ilo},        {"ihi", ihi},       {"limit", limit},
                          {"ell", ell},        {"d", d},           {"qidx", qidx},
                          {"theta", theta},    {"x", x},           {"set", set},
                          {"kind", kind},      {"format", format}, {"workers", workers},
                          {"seed", seed},      {"canonical", canonical()}};
}

Frequency theta_parse(const std::string& spec) { return Frequency::parse(spec); }

std::vector<uint64_t> parse_set_spec(const std::string& spec) {
    std::vector<uint64_t> out;
    if (spec.rfind("arith:", 0) == 0) {
        uint64_t start = 0, step = 0, limit = 0;
        std::istringstream is(spec.substr(6));
        std::string s1, s2, s3;
        std::getline(is, s1, ':');
        std::getline(is, s2, ':');
        std::getline(is, s3, ':');
        try {
            start = std::stoull(s1);
            step = std::stoull(s2);
            limit = std::stoull(s3);
        } catch (const std::exception&) {
            throw PreconditionError("set spec: arith:<start>:<step>:<limit>");
        }
        require(step >= 1, "set spec: step must be >= 1");
        require_budget((limit - std::min(start, limit)) / step <= 100'000'000,
                       "set spec: arithmetic progression too long");
        for (uint64_t v = start; v < limit; v += step) out.push_back(v);
    } else if (spec.rfind("file:", 0) == 0) {
        std::ifstream in(spec.substr(5));
        require(in.good(), "set spec: cannot open file '" + spec.substr(5) + "'");
        uint64_t v;
        while (in >> v) out.push_back(v);
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
    } else {
        throw PreconditionError("set spec: expected arith:... or file:...");
    }
    require(!out.empty(), "set spec: empty set");
    return out;
}

}  // namespace restdig
