// Command-line front end. One JSON document (or CSV table) per invocation on
// stdout, diagnostics on stderr. Exit codes: 0 success, 1 usage error,
// 2 precondition violation, 3 budget exceeded.

#include <CLI11.hpp>
#include <json.hpp>

#include <complex>
#include <iostream>
#include <sstream>

#include "restdig/circle.hpp"
#include "restdig/errors.hpp"
#include "restdig/kappa.hpp"
#include "restdig/parallel.hpp"
#include "restdig/recurrence.hpp"
#include "restdig/riesz.hpp"
#include "restdig/run_config.hpp"
#include "restdig/sieve.hpp"

namespace {

using nlohmann::json;
using namespace restdig;

json complex_json(std::complex<double> z) {
    return json{{"re", z.real()}, {"im", z.imag()}, {"abs", std::abs(z)}};
}

std::string eta_string(const ArcPoint& p) {
    if (p.etaDen == 1) return std::to_string(p.etaNum);
    return std::to_string(p.etaNum) + "/" + std::to_string(p.etaDen);
}

void emit(const RunConfig& cfg, json result) {
    json doc{{"config", cfg.to_json()}, {"result", std::move(result)}};
    std::cout << doc.dump(2) << "\n";
}

int run_digits(const RunConfig& cfg) {
    const DigitSystem ds = cfg.digit_system();
    const auto c = ds.constants();
    const auto r = ds.check_conditions(cfg.epsilon);
    emit(cfg, json{{"system", ds.spec_string()},
                   {"s", c.s},
                   {"sPrime", c.sPrime},
                   {"k", c.k},
                   {"C0", c.C0},
                   {"alpha", c.alpha},
                   {"hasOne", r.hasOne},
                   {"intervalCount", r.intervalCount},
                   {"densityOk", r.densityOk},
                   {"alphaBelowFifth", r.alphaBelowFifth},
                   {"epsilon", cfg.epsilon}});
    return 0;
}

int run_fourier(const RunConfig& cfg) {
    const DigitSystem ds = cfg.digit_system();
    const Frequency theta = theta_parse(cfg.theta);
    const auto v = chat(ds, cfg.N, theta);
    json res{{"chat", complex_json(v.value)},
             {"absErrorBound", v.absErrorBound},
             {"envelope", envelope(ds, cfg.N, theta)}};
    if (ds.has_consecutive_pair())
        res["decayEnvelope"] = decay_envelope(ds, cfg.N, theta);
    emit(cfg, std::move(res));
    return 0;
}

int run_bounds(const RunConfig& cfg) {
    const DigitSystem ds = cfg.digit_system();
    BoundReport rep;
    if (cfg.kind == "l1") {
        rep = l1_scan(ds, cfg.N, theta_parse(cfg.x));
    } else if (cfg.kind == "sieve") {
        rep = large_sieve_scan(ds, cfg.N, cfg.D, theta_parse(cfg.x));
    } else if (cfg.kind == "hybrid") {
        rep = hybrid_scan(ds, cfg.N, cfg.D, cfg.B, theta_parse(cfg.x));
    } else if (cfg.kind == "spectra") {
        rep = large_spectra_count(ds, cfg.N, theta_parse(cfg.theta), cfg.ilo, cfg.ihi,
                                  cfg.lambda);
    } else if (cfg.kind == "fourier-lambda") {
        const auto approx = dirichlet_approx(theta_parse(cfg.theta),
                                             cfg.D0 ? cfg.D0 : 100);
        rep = lambda_fourier_check(cfg.limit, approx);
    } else if (cfg.kind == "arc-reduction") {
        rep = arc_reduction_check(ds, cfg.N, cfg.d, cfg.ell, cfg.Cexp);
    } else if (cfg.kind == "minor") {
        auto [r1, r2] = minor_arc_report(ds, cfg.N, cfg.D, cfg.B,
                                         cfg.D0 ? cfg.D0 : 1, theta_parse(cfg.theta));
        if (cfg.format == "csv") {
            std::cout << BoundReport::csv_header() << "\n"
                      << r1.csv_row() << "\n"
                      << r2.csv_row() << "\n";
        } else {
            emit(cfg, json{{"dyadicEta", r1.to_json()}, {"unitEta", r2.to_json()}});
        }
        return 0;
    } else {
        throw PreconditionError("bounds: unknown kind '" + cfg.kind + "'");
    }
    if (cfg.format == "csv")
        std::cout << BoundReport::csv_header() << "\n" << rep.csv_row() << "\n";
    else
        emit(cfg, rep.to_json());
    return 0;
}

int run_kappa(const RunConfig& cfg) {
    const DigitSystem ds = cfg.digit_system();
    const KappaValue kv = kappa(ds, cfg.q, cfg.t);
    const Obstruction ob = obstruction(ds, cfg.q, cfg.t);
    emit(cfg, json{{"kappa", kv.value.get_str()},
                   {"decimal", mpq_get_d(kv.value.get_mpq_t())},
                   {"termCount", kv.termCount},
                   {"u", kv.decomposition.u},
                   {"v", kv.decomposition.v},
                   {"h", kv.decomposition.h},
                   {"L", kv.decomposition.L},
                   {"obstruction", ob == Obstruction::None
                                       ? "none"
                                       : (ob == Obstruction::Unit ? "unit" : "digit")}});
    return 0;
}

int run_verify_dirichlet(const RunConfig& cfg) {
    const DigitSystem ds = cfg.digit_system();
    const auto rep = verify_dirichlet(ds, cfg.q, cfg.t, cfg.nmin, cfg.nmax);
    if (cfg.format == "csv") {
        std::cout << "N,empirical,predicted,ratio\n";
        std::cout.precision(17);
        for (const auto& row : rep.rows)
            std::cout << row.N << ',' << row.empirical << ',' << row.predicted << ','
                      << row.ratio << "\n";
        return 0;
    }
    json rows = json::array();
    for (const auto& row : rep.rows)
        rows.push_back(json{{"N", row.N},
                            {"empirical", row.empirical},
                            {"predicted", row.predicted},
                            {"ratio", row.ratio}});
    emit(cfg, json{{"kappa", rep.kappaValue.value.get_str()},
                   {"rows", rows},
                   {"monotoneApproach", rep.monotoneApproach},
                   {"finalWithinTenPercent", rep.finalWithinTenPercent},
                   {"closerAtEnd", rep.closerAtEnd},
                   {"residualSites", rep.residualSites}});
    return 0;
}

int run_expsum(const RunConfig& cfg) {
    const DigitSystem ds = cfg.digit_system();
    emit(cfg, complex_json(lambda_exp_sum(ds, cfg.N, theta_parse(cfg.theta))));
    return 0;
}

int run_arcs(const RunConfig& cfg) {
    const DigitSystem ds = cfg.digit_system();
    const uint64_t d0 = cfg.D0 ? cfg.D0 : 10;
    if (cfg.format == "csv") {
        std::cout << "a,ell,d,eta\n";
        arc_decomposition_stream(ds, cfg.N, d0, [&](const ArcPoint& p) {
            std::cout << p.a << ',' << p.ell << ',' << p.d << ',' << eta_string(p) << "\n";
        });
        return 0;
    }
    json pts = json::array();
    arc_decomposition_stream(ds, cfg.N, d0, [&](const ArcPoint& p) {
        pts.push_back(json{{"a", p.a}, {"ell", p.ell}, {"d", p.d}, {"eta", eta_string(p)}});
    });
    emit(cfg, std::move(pts));
    return 0;
}

int run_reduce(const RunConfig& cfg) {
    const DigitSystem ds = cfg.digit_system();
    ReductionParameters params;
    params.A = cfg.A;
    params.Aprime = cfg.Aprime;
    params.Bexp = cfg.Bexp;
    params.D0 = cfg.D0;
    const auto cmp = compare_direct_vs_reduced(ds, cfg.N, theta_parse(cfg.theta), params);
    emit(cfg, json{{"direct", complex_json(cmp.direct)},
                   {"reducedMainTerm", complex_json(cmp.reduced)},
                   {"discrepancy", cmp.discrepancy},
                   {"alphaFlag", cmp.alphaBelowFifth},
                   {"cutoff", cmp.cutoff}});
    return 0;
}

int run_weyl(const RunConfig& cfg) {
    const DigitSystem ds = cfg.digit_system();
    const auto rep = weyl_average(ds, cfg.m, cfg.N, theta_parse(cfg.theta));
    emit(cfg, json{{"m", rep.m},
                   {"N", rep.N},
                   {"sampleCount", rep.sampleCount},
                   {"average", complex_json(rep.average)},
                   {"magnitude", rep.magnitude},
                   {"relativeDensity", relative_density(ds, cfg.m, cfg.N)}});
    return 0;
}

int run_search(const RunConfig& cfg) {
    const DigitSystem ds = cfg.digit_system();
    WitnessQuery query;
    query.set = parse_set_spec(cfg.set);
    query.searchLimit = cfg.limit;
    const auto w = sarkozy_witness(ds, query);
    json res;
    if (w) {
        res = json{{"found", true}, {"a1", w->a1}, {"a2", w->a2}, {"p", w->p}};
    } else {
        res = json{{"found", false}};
    }
    res["setSize"] = query.set.size();
    res["searchLimit"] = query.searchLimit;
    emit(cfg, std::move(res));
    return 0;
}

int run_vdc(const RunConfig& cfg) {
    const DigitSystem ds = cfg.digit_system();
    std::vector<Frequency> thetas;
    std::istringstream is(cfg.theta);
    std::string one;
    while (std::getline(is, one, ';'))
        if (!one.empty()) thetas.push_back(theta_parse(one));
    const auto rep = vdc_harness(ds, cfg.qidx, thetas, cfg.N);
    if (cfg.format == "csv") {
        std::cout << "theta,harmonic,re,im,magnitude,belowThreshold\n";
        std::cout.precision(17);
        for (const auto& e : rep.entries)
            std::cout << e.theta << ',' << e.harmonic << ',' << e.weylSum.real() << ','
                      << e.weylSum.imag() << ',' << e.magnitude << ','
                      << (e.belowThreshold ? 1 : 0) << "\n";
        return 0;
    }
    json entries = json::array();
    for (const auto& e : rep.entries)
        entries.push_back(json{{"theta", e.theta},
                               {"harmonic", e.harmonic},
                               {"weylSum", complex_json(e.weylSum)},
                               {"magnitude", e.magnitude},
                               {"belowThreshold", e.belowThreshold}});
    emit(cfg, json{{"qIdx", rep.qIdx},
                   {"qFactorial", rep.qFactorial},
                   {"sampleCount", rep.sampleCount},
                   {"threshold", rep.threshold},
                   {"entries", entries}});
    return 0;
}

void add_common(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--base", cfg.base, "digit system base");
    sub->add_option("--exclude", cfg.exclude, "excluded digits, e.g. 7 or 3-5,8");
    sub->add_option("--format", cfg.format, "json or csv");
    sub->add_option("--workers", cfg.workers, "worker threads (0 = auto)");
    sub->add_option("--seed", cfg.seed, "seed echoed into reports");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"digit-restricted primes toolkit"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto* digits = app.add_subcommand("digits", "structural constants and conditions");
    add_common(digits, cfg);
    digits->add_option("--epsilon", cfg.epsilon);

    auto* fourier = app.add_subcommand("fourier", "transform value and envelopes");
    add_common(fourier, cfg);
    fourier->add_option("--N", cfg.N);
    fourier->add_option("--theta", cfg.theta);

    auto* bounds = app.add_subcommand("bounds", "inequality scans");
    add_common(bounds, cfg);
    bounds->add_option("--kind", cfg.kind,
                       "l1|sieve|hybrid|spectra|fourier-lambda|arc-reduction|minor");
    bounds->add_option("--N", cfg.N);
    bounds->add_option("--D", cfg.D);
    bounds->add_option("--B", cfg.B);
    bounds->add_option("--D0", cfg.D0);
    bounds->add_option("--x", cfg.x);
    bounds->add_option("--theta", cfg.theta);
    bounds->add_option("--ilo", cfg.ilo);
    bounds->add_option("--ihi", cfg.ihi);
    bounds->add_option("--lambda", cfg.lambda);
    bounds->add_option("--limit", cfg.limit);
    bounds->add_option("--d", cfg.d);
    bounds->add_option("--ell", cfg.ell);
    bounds->add_option("--Cexp", cfg.Cexp);

    auto* kappa_cmd = app.add_subcommand("kappa", "exact Dirichlet-density constant");
    add_common(kappa_cmd, cfg);
    kappa_cmd->add_option("--q", cfg.q);
    kappa_cmd->add_option("--t", cfg.t);

    auto* vd = app.add_subcommand("verify-dirichlet", "empirical density convergence");
    add_common(vd, cfg);
    vd->add_option("--q", cfg.q);
    vd->add_option("--t", cfg.t);
    vd->add_option("--nmin", cfg.nmin);
    vd->add_option("--nmax", cfg.nmax);

    auto* expsum = app.add_subcommand("expsum", "Lambda-weighted exponential sum");
    add_common(expsum, cfg);
    expsum->add_option("--N", cfg.N);
    expsum->add_option("--theta", cfg.theta);

    auto* arcs = app.add_subcommand("arcs", "Dirichlet arc decomposition of the grid");
    add_common(arcs, cfg);
    arcs->add_option("--N", cfg.N);
    arcs->add_option("--D0", cfg.D0);

    auto* reduce = app.add_subcommand("reduce", "direct sum vs arc main term");
    add_common(reduce, cfg);
    reduce->add_option("--N", cfg.N);
    reduce->add_option("--theta", cfg.theta);
    reduce->add_option("--A", cfg.A);
    reduce->add_option("--Aprime", cfg.Aprime);

    auto* weyl = app.add_subcommand("weyl", "Weyl average over restricted primes");
    add_common(weyl, cfg);
    weyl->add_option("--m", cfg.m);
    weyl->add_option("--N", cfg.N);
    weyl->add_option("--theta", cfg.theta);

    auto* search = app.add_subcommand("search", "shifted-prime difference witness");
    add_common(search, cfg);
    search->add_option("--set", cfg.set, "arith:<start>:<step>:<limit> or file:<path>");
    search->add_option("--limit", cfg.limit, "largest prime examined");

    auto* vdc = app.add_subcommand("vdc", "van der Corput equidistribution harness");
    add_common(vdc, cfg);
    vdc->add_option("--qidx", cfg.qidx);
    vdc->add_option("--N", cfg.N);
    vdc->add_option("--theta", cfg.theta, "semicolon-separated frequency list");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n\n" << app.help() << "\n";
        return 1;
    }

    cfg.subcommand = app.get_subcommands().front()->get_name();
    restdig::set_worker_count(cfg.workers);

    try {
        if (cfg.subcommand == "digits") return run_digits(cfg);
        if (cfg.subcommand == "fourier") return run_fourier(cfg);
        if (cfg.subcommand == "bounds") return run_bounds(cfg);
        if (cfg.subcommand == "kappa") return run_kappa(cfg);
        if (cfg.subcommand == "verify-dirichlet") return run_verify_dirichlet(cfg);
        if (cfg.subcommand == "expsum") return run_expsum(cfg);
        if (cfg.subcommand == "arcs") return run_arcs(cfg);
        if (cfg.subcommand == "reduce") return run_reduce(cfg);
        if (cfg.subcommand == "weyl") return run_weyl(cfg);
        if (cfg.subcommand == "search") return run_search(cfg);
        if (cfg.subcommand == "vdc") return run_vdc(cfg);
        std::cerr << "unknown subcommand\n";
        return 1;
    } catch (const restdig::BudgetError& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const restdig::PreconditionError& e) {
        std::cerr << "precondition violated: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
