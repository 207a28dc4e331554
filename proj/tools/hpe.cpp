// hpe: pseudo-spectral stochastic primitive equations on the unit 3-torus.
//
// Subcommands: noise-gen, admissibility, exponents, simulate, montecarlo,
// verify, continuity.  Every subcommand prints a manifest of the resolved
// parameters (config keys plus run.seed and run.git_like_version) so a run
// can be reproduced bit for bit from its own output.
//
// Exit codes: 0 success, 2 parameter inadmissible, 3 blow-up detected
// (or Serrin trip under --strict), 4 I/O or format error.

#include "CLI11.hpp"

#include "hpe/config.hpp"
#include "hpe/diagnostics.hpp"
#include "hpe/dynamics.hpp"
#include "hpe/exponents.hpp"
#include "hpe/fft.hpp"
#include "hpe/hydro.hpp"
#include "hpe/montecarlo.hpp"
#include "hpe/noise.hpp"
#include "hpe/rng.hpp"
#include "hpe/snapshot.hpp"
#include "hpe/spaces.hpp"
#include "hpe/spectral.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

namespace {

constexpr const char* kVersion = "0.2.0";

constexpr int kExitOk = 0;
constexpr int kExitInadmissible = 2;
constexpr int kExitBlowUp = 3;
constexpr int kExitIo = 4;

struct InadmissibleError : std::domain_error {
    using std::domain_error::domain_error;
};

std::ofstream open_output(const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file: " + path);
    return os;
}

std::ifstream open_input(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open input file: " + path);
    return is;
}

void emit_manifest(const hpe::Config& cfg, const std::string& path) {
    if (path.empty()) {
        cfg.write_manifest(std::cout);
    } else {
        auto os = open_output(path);
        cfg.write_manifest(os);
    }
}

hpe::Rational parse_rational(const std::string& s, const std::string& what) {
    try {
        return hpe::Rational::parse(s);
    } catch (const std::exception&) {
        throw std::invalid_argument(what + ": expected a rational like 4 or 8/3, got '" +
                                    s + "'");
    }
}

// ---------------------------------------------------------------- noise-gen

int cmd_noise_gen(int d, const std::string& alpha_s, int kmax, const std::string& output,
                  const std::string& manifest_path) {
    std::size_t used = 0;
    double alpha = std::stod(alpha_s, &used);
    if (used != alpha_s.size())
        throw std::invalid_argument("--alpha: not a number: " + alpha_s);
    hpe::NoiseEnsemble e = hpe::build_kraichnan(d, alpha, kmax);

    hpe::Config manifest;
    manifest.note("noise.d", std::to_string(d));
    manifest.note("noise.alpha", hpe::format_double(alpha));
    manifest.note("noise.kmax", std::to_string(kmax));
    manifest.note("noise.modes", std::to_string(e.modes.size()));
    if (kmax >= 8) {
        hpe::SpectrumReport sr = hpe::spectrum_slope(e);
        manifest.note("noise.spectrum_slope", hpe::format_double(sr.slope));
        manifest.note("noise.amplitude_slope", hpe::format_double(sr.amplitude_slope));
    }
    manifest.note("run.seed", "0");
    manifest.note("run.git_like_version", kVersion);
    emit_manifest(manifest, manifest_path);

    if (output.empty() || output == "-") {
        hpe::save_ensemble(std::cout, e);
    } else {
        auto os = open_output(output);
        hpe::save_ensemble(os, e);
    }
    return kExitOk;
}

// ------------------------------------------------- admissibility, exponents

hpe::ParamSet param_set(const std::string& p, const std::string& q, const std::string& d,
                        const std::string& g) {
    hpe::ParamSet ps;
    ps.p = parse_rational(p, "p");
    ps.q = parse_rational(q, "q");
    ps.delta = parse_rational(d, "delta");
    ps.gamma = parse_rational(g, "gamma");
    ps.validate();
    return ps;
}

void note_params(hpe::Config& m, const hpe::ParamSet& ps) {
    m.note("params.p", ps.p.str());
    m.note("params.q", ps.q.str());
    m.note("params.delta", ps.delta.str());
    m.note("params.gamma", ps.gamma.str());
    m.note("run.seed", "0");
    m.note("run.git_like_version", kVersion);
}

int cmd_admissibility(const hpe::ParamSet& ps, const std::string& manifest_path) {
    hpe::AdmissibilityResult res = hpe::check_admissibility(ps);
    hpe::Config manifest;
    note_params(manifest, ps);
    emit_manifest(manifest, manifest_path);

    std::cout << "admissible = " << (res.admissible ? "true" : "false") << "\n";
    for (const auto& r : res.reasons) std::cout << "reason: " << r << "\n";
    return res.admissible ? kExitOk : kExitInadmissible;
}

int cmd_exponents(const hpe::ParamSet& ps, const std::string& manifest_path) {
    hpe::ExponentReport rep = hpe::critical_exponents(ps); // throws if inadmissible
    hpe::Config manifest;
    note_params(manifest, ps);
    emit_manifest(manifest, manifest_path);

    auto line = [](const char* name, const hpe::Rational& r) {
        std::printf("%s = %s (%.17g)\n", name, r.str().c_str(), r.value());
    };
    line("alpha_c", rep.alpha_c);
    line("beta", rep.beta);
    line("trace_smoothness", rep.trace);
    line("two_over_q", rep.two_over_q);
    line("serrin_mu0", rep.serrin_mu0);
    return kExitOk;
}

// ----------------------------------------------------------------- simulate

struct RunSetup {
    hpe::SolverConfig solver;
    hpe::SimState state;
    double t_end = 0.0;
    std::string out_csv;
    std::string out_snapshot;
    double serrin_threshold = 1e6;
    bool serrin_enabled = false;
};

hpe::RealField random_band_field(const hpe::GridSpec& g, int ncomp, std::uint64_t key,
                                 double amplitude, bool project) {
    hpe::SpectralField F(g, ncomp);
    std::uint64_t channel = 0;
    for (int kx = 0; kx <= 2; ++kx)
        for (int ky = -2; ky <= 2; ++ky)
            for (int kz = -2; kz <= 2; ++kz) {
                if (kx == 0 && (ky < 0 || (ky == 0 && kz < 0))) continue;
                if (kx == 0 && ky == 0 && kz == 0) continue;
                if (kx * kx + ky * ky + kz * kz > 4) continue;
                for (int c = 0; c < ncomp; ++c) {
                    double re = hpe::gaussian(key, 1, channel++);
                    double im = hpe::gaussian(key, 1, channel++);
                    F.mode(c, kx, ky, kz) = {re, im};
                    F.mode(c, -kx, -ky, -kz) = {re, -im};
                }
            }
    hpe::dealias_in_place(F);
    if (project) hpe::hydrostatic_project_spectral(F);
    hpe::RealField f = hpe::to_physical(F);
    double max = 0.0;
    for (double v : f.values) max = std::max(max, std::abs(v));
    if (max > 0.0)
        for (double& v : f.values) v *= amplitude / max;
    return f;
}

RunSetup build_run(const hpe::Config& cfg, std::uint64_t seed_override, bool has_seed_flag) {
    RunSetup run;

    int n = int(cfg.get_int("grid.n", 16));
    hpe::GridSpec grid{int(cfg.get_int("grid.nx", n)), int(cfg.get_int("grid.ny", n)),
                       int(cfg.get_int("grid.nz", n))};
    grid.validate();
    run.solver.grid = grid;
    run.solver.dt = cfg.get_double("time.dt", 1e-3);
    run.t_end = cfg.get_double("time.t_end", 0.1);
    run.solver.seed = std::uint64_t(cfg.get_int("run.seed", 0));
    if (has_seed_flag) run.solver.seed = seed_override;

    std::string form = cfg.get_string("dynamics.formulation", "stratonovich");
    if (form == "ito")
        run.solver.formulation = hpe::Formulation::ito;
    else if (form == "stratonovich")
        run.solver.formulation = hpe::Formulation::stratonovich;
    else
        throw std::invalid_argument("dynamics.formulation: expected ito or stratonovich");

    std::string adv = cfg.get_string("dynamics.advection", "nondivergence");
    if (adv == "divergence")
        run.solver.advection = hpe::AdvectionForm::divergence;
    else if (adv != "nondivergence")
        throw std::invalid_argument("dynamics.advection: expected nondivergence or divergence");

    run.solver.dealias_products = cfg.get_bool("dynamics.dealias", true);
    run.solver.enable_nonlinearity = cfg.get_bool("dynamics.nonlinearity", true);
    run.solver.diagnostics_stride = int(cfg.get_int("diagnostics.stride", 1));

    // Velocity noise ensemble.
    std::string kind = cfg.get_string("noise.kind", "kraichnan");
    if (kind == "kraichnan") {
        run.solver.sigma = hpe::build_kraichnan(int(cfg.get_int("noise.d", 2)),
                                                cfg.get_double("noise.alpha", 4.0 / 3.0),
                                                int(cfg.get_int("noise.kmax", 4)));
    } else if (kind == "file") {
        auto is = open_input(cfg.require_string("noise.file"));
        run.solver.sigma = hpe::load_ensemble(is);
    } else if (kind == "constant") {
        run.solver.sigma = hpe::NoiseEnsemble::constant(
            {cfg.get_double("noise.dir_x", 1.0), cfg.get_double("noise.dir_y", 0.0),
             cfg.get_double("noise.dir_z", 0.0)},
            cfg.get_double("noise.amplitude", 1.0));
    } else if (kind != "none") {
        throw std::invalid_argument("noise.kind: expected kraichnan, file, constant or none");
    }

    const double viscous_weight = cfg.get_double("dynamics.viscous_weight", 1.0);
    if (run.solver.formulation == hpe::Formulation::stratonovich) {
        run.solver.coeffs =
            hpe::stratonovich_drift_coeffs(run.solver.sigma, grid, viscous_weight);
    } else {
        double nu = cfg.get_double("dynamics.nu", 0.5);
        run.solver.coeffs = hpe::DriftCoeffs::isotropic(grid, nu);
    }

    if (!run.solver.sigma.modes.empty()) {
        double margin = hpe::parabolicity_margin(run.solver.sigma, run.solver.coeffs.a);
        if (margin <= 0.0)
            throw InadmissibleError("parabolicity violated: min eig(a - S/2) = " +
                                    hpe::format_double(margin));
    }

    // Temperature.
    if (cfg.get_bool("theta.enable", false)) {
        run.state.theta = hpe::RealField(grid, 1);
        std::string tkind = cfg.get_string("theta.noise_kind", "kraichnan");
        if (tkind == "kraichnan") {
            run.solver.chi = hpe::build_kraichnan(
                int(cfg.get_int("theta.d", 2)), cfg.get_double("theta.alpha", 4.0 / 3.0),
                int(cfg.get_int("theta.kmax", 4)));
        } else if (tkind != "none") {
            throw std::invalid_argument("theta.noise_kind: expected kraichnan or none");
        }
        run.solver.theta_coeffs = hpe::theta_stratonovich_coeffs(
            run.solver.chi, grid, cfg.get_double("theta.viscous_weight", 1.0));
        std::string tinit = cfg.get_string("theta.init", "zero");
        if (tinit == "random") {
            run.state.theta = random_band_field(grid, 1, run.solver.seed ^ 0x7468u,
                                                cfg.get_double("theta.amplitude", 1.0),
                                                false);
        } else if (tinit != "zero") {
            throw std::invalid_argument("theta.init: expected zero or random");
        }
    }

    // Initial velocity.
    std::string init = cfg.get_string("init.kind", "zero");
    if (init == "zero") {
        run.state.v = hpe::RealField(grid, 2);
    } else if (init == "random") {
        run.state.v = random_band_field(grid, 2, run.solver.seed ^ 0x76656cu,
                                        cfg.get_double("init.amplitude", 1.0), true);
    } else if (init == "snapshot") {
        auto is = open_input(cfg.require_string("init.snapshot"));
        run.state.v = hpe::load_snapshot(is);
        if (!(run.state.v.grid == grid) || run.state.v.components != 2)
            throw std::runtime_error("init.snapshot: grid or component mismatch");
        run.state.v = hpe::hydrostatic_project(run.state.v);
    } else {
        throw std::invalid_argument("init.kind: expected zero, random or snapshot");
    }

    // Serrin monitor parameters; delta0 must be given explicitly.
    run.serrin_enabled = cfg.get_bool("serrin.enable", false);
    if (run.serrin_enabled) {
        hpe::Rational p0 = parse_rational(cfg.get_string("serrin.p0", "4"), "serrin.p0");
        hpe::Rational q0 = parse_rational(cfg.get_string("serrin.q0", "2"), "serrin.q0");
        hpe::Rational d0 =
            parse_rational(cfg.require_string("serrin.delta0"), "serrin.delta0");
        hpe::ParamSet ps;
        ps.p = p0;
        ps.q = q0;
        ps.delta = d0;
        ps.gamma = hpe::Rational(2); // gamma is not part of the (p0,q0,delta0) region
        auto adm = hpe::check_admissibility(ps);
        if (!adm.admissible) {
            std::string why = "serrin (p0,q0,delta0) region violated";
            for (const auto& r : adm.reasons) why += "; " + r;
            throw InadmissibleError(why);
        }
        run.solver.serrin_p0 = p0.value();
        run.solver.serrin_q0 = q0.value();
        run.serrin_threshold = cfg.get_double("serrin.threshold", 1e6);
    }

    run.out_csv = cfg.get_string("out.csv", "");
    run.out_snapshot = cfg.get_string("out.snapshot", "");
    return run;
}

int cmd_simulate(const std::string& config_path, std::uint64_t seed_override,
                 bool has_seed_flag, bool strict, const std::string& manifest_path) {
    hpe::Config cfg = hpe::Config::parse_file(config_path);
    RunSetup run = build_run(cfg, seed_override, has_seed_flag);
    cfg.check_consumed();
    cfg.note("run.seed", std::to_string(run.solver.seed));
    cfg.note("run.git_like_version", kVersion);
    emit_manifest(cfg, manifest_path);

    hpe::EnergyLedger ledger(run.solver);
    ledger.start(run.state);

    bool blew_up = false;
    double blow_t = 0.0;
    hpe::SimState final_state;
    try {
        final_state = hpe::simulate(run.solver, run.state, run.t_end, ledger.observer());
    } catch (const hpe::BlowUpError& e) {
        blew_up = true;
        blow_t = e.t;
    }

    if (!run.out_csv.empty()) {
        auto os = open_output(run.out_csv);
        hpe::write_diagnostics_csv(os, ledger.records());
    } else {
        hpe::write_diagnostics_csv(std::cout, ledger.records());
    }
    if (!run.out_snapshot.empty() && !blew_up) {
        auto os = open_output(run.out_snapshot);
        hpe::save_snapshot(os, final_state.v);
    }

    if (blew_up) {
        std::cerr << "blow-up detected at t = " << hpe::format_double(blow_t) << "\n";
        return kExitBlowUp;
    }

    if (run.serrin_enabled) {
        hpe::SerrinResult sr = hpe::serrin_monitor(
            ledger.records(), run.solver.serrin_p0, run.solver.serrin_q0,
            run.serrin_threshold);
        std::cerr << "serrin integral = " << hpe::format_double(sr.integral)
                  << (sr.tripped ? " (threshold tripped)" : "") << "\n";
        if (sr.tripped && strict) return kExitBlowUp;
    }
    return kExitOk;
}

// --------------------------------------------------------------- montecarlo

int cmd_montecarlo(const std::string& config_path, std::uint64_t seed_override,
                   bool has_seed_flag, const std::string& manifest_path) {
    hpe::Config cfg = hpe::Config::parse_file(config_path);
    RunSetup run = build_run(cfg, seed_override, has_seed_flag);

    int samples = int(cfg.get_int("mc.samples", 16));
    std::string reduce_s = cfg.get_string("mc.reduce", "mean_l2");
    int threads = int(cfg.get_int("mc.threads", 0));
    hpe::Reduce reduce;
    if (reduce_s == "mean_l2")
        reduce = hpe::Reduce::mean_l2;
    else if (reduce_s == "mean_X")
        reduce = hpe::Reduce::mean_X;
    else if (reduce_s == "quantiles")
        reduce = hpe::Reduce::quantiles;
    else
        throw std::invalid_argument("mc.reduce: expected mean_l2, mean_X or quantiles");
    cfg.check_consumed();

    hpe::MonteCarloResult res =
        hpe::monte_carlo(run.solver, run.state, run.t_end, samples, reduce, threads);

    cfg.note("run.seed", std::to_string(run.solver.seed));
    cfg.note("run.git_like_version", kVersion);
    cfg.note("run.blowup_fraction", hpe::format_double(res.blowup_fraction()));
    emit_manifest(cfg, manifest_path);

    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!run.out_csv.empty()) {
        file = open_output(run.out_csv);
        out = &file;
    }
    if (reduce == hpe::Reduce::quantiles) {
        *out << "t,samples,q25,median,q75\n";
        for (const auto& r : res.rows) {
            char buf[160];
            std::snprintf(buf, sizeof buf, "%.17g,%d,%.17g,%.17g,%.17g\n", r.t, r.samples,
                          r.q25, r.median, r.q75);
            *out << buf;
        }
    } else {
        *out << "t,samples,mean,variance,std_error\n";
        for (const auto& r : res.rows) {
            char buf[160];
            std::snprintf(buf, sizeof buf, "%.17g,%d,%.17g,%.17g,%.17g\n", r.t, r.samples,
                          r.mean, r.variance, r.std_error);
            *out << buf;
        }
    }
    return kExitOk;
}

// --------------------------------------------------------------- continuity

int cmd_continuity(const std::string& config_path, std::uint64_t seed_override,
                   bool has_seed_flag, const std::string& manifest_path) {
    hpe::Config cfg = hpe::Config::parse_file(config_path);
    RunSetup run = build_run(cfg, seed_override, has_seed_flag);

    double eps = cfg.get_double("continuity.eps", 1e-2);
    int pairs = int(cfg.get_int("continuity.pairs", 8));
    double q = cfg.get_double("continuity.q", 8.0 / 3.0);
    double p = cfg.get_double("continuity.p", 4.0);
    cfg.check_consumed();

    hpe::ContinuityResult res =
        hpe::continuity_experiment(run.solver, run.state, run.t_end, eps, pairs, q, p);

    cfg.note("run.seed", std::to_string(run.solver.seed));
    cfg.note("run.git_like_version", kVersion);
    cfg.note("run.blowups", std::to_string(res.blowups));
    emit_manifest(cfg, manifest_path);

    if (res.sup_diff.empty()) {
        std::cout << "no surviving pairs\n";
        return kExitBlowUp;
    }
    std::printf("pairs = %d\n", pairs);
    std::printf("sup_diff_min = %.17g\n", res.sup_diff.front());
    std::printf("sup_diff_q25 = %.17g\n", res.quantile(0.25));
    std::printf("sup_diff_median = %.17g\n", res.quantile(0.5));
    std::printf("sup_diff_q75 = %.17g\n", res.quantile(0.75));
    std::printf("sup_diff_max = %.17g\n", res.sup_diff.back());
    return kExitOk;
}

// ------------------------------------------------------------------- verify

int cmd_verify(std::uint64_t seed, const std::string& manifest_path) {
    hpe::Config manifest;
    manifest.note("run.seed", std::to_string(seed));
    manifest.note("run.git_like_version", kVersion);
    emit_manifest(manifest, manifest_path);

    int failures = 0;
    auto check = [&](const char* name, bool ok) {
        std::printf("%-44s %s\n", name, ok ? "pass" : "FAIL");
        if (!ok) ++failures;
    };

    hpe::GridSpec g{16, 16, 16};

    // FFT roundtrip and Parseval.
    {
        hpe::RealField f = random_band_field(g, 2, seed ^ 0x666674u, 1.0, false);
        hpe::SpectralField F = hpe::to_spectral(f);
        hpe::RealField back = hpe::to_physical(F);
        double err = 0.0, l2p = 0.0, l2s = 0.0;
        for (std::size_t i = 0; i < f.values.size(); ++i) {
            err = std::max(err, std::abs(f.values[i] - back.values[i]));
            l2p += f.values[i] * f.values[i];
        }
        l2p *= g.cell_volume();
        for (const auto& c : F.coeffs) l2s += std::norm(c);
        check("fft roundtrip", err < 1e-12);
        check("parseval", std::abs(l2p - l2s) < 1e-12 * std::max(1.0, l2p));
    }

    // Projection is idempotent and kills the barotropic divergence.
    {
        hpe::RealField f = random_band_field(g, 2, seed ^ 0x70726fu, 1.0, false);
        hpe::RealField pf = hpe::hydrostatic_project(f);
        hpe::RealField ppf = hpe::hydrostatic_project(pf);
        double err = 0.0;
        for (std::size_t i = 0; i < pf.values.size(); ++i)
            err = std::max(err, std::abs(pf.values[i] - ppf.values[i]));
        check("projection idempotent", err < 1e-12);
        check("projection admissible", hpe::barotropic_divergence(pf) < 1e-10);
    }

    // Kraichnan ensemble shape.
    {
        hpe::NoiseEnsemble e = hpe::build_kraichnan(2, 4.0 / 3.0, 2);
        check("kraichnan d=2 K=2 mode count", e.modes.size() == 12);
        hpe::NoiseEnsemble big = hpe::build_kraichnan(2, 4.0 / 3.0, 16);
        hpe::SpectrumReport sr = hpe::spectrum_slope(big);
        check("kraichnan spectrum slope",
              std::abs(sr.slope - (-(1.0 + 4.0 / 3.0))) < 0.35);
        std::ostringstream buf;
        hpe::save_ensemble(buf, big);
        std::istringstream in(buf.str());
        hpe::NoiseEnsemble loaded = hpe::load_ensemble(in);
        bool same = loaded.modes.size() == big.modes.size();
        for (std::size_t i = 0; same && i < big.modes.size(); ++i)
            same = loaded.modes[i].k == big.modes[i].k &&
                   loaded.modes[i].amplitude == big.modes[i].amplitude;
        check("ensemble roundtrip", same);
    }

    // Exponent identity on the reference parameter point.
    {
        hpe::ParamSet ps;
        ps.p = hpe::Rational(4);
        ps.q = hpe::Rational(8, 3);
        ps.delta = hpe::Rational(3, 8);
        ps.gamma = hpe::Rational(7, 10);
        auto rep = hpe::critical_exponents(ps);
        check("exponent trace identity", rep.trace == rep.two_over_q);
        check("beta = 25/32", rep.beta == hpe::Rational(25, 32));
    }

    // Heat step oracle: one IMEX step of the |k| = 1 mode halves by the
    // exact resolvent factor.
    {
        hpe::SolverConfig cfg;
        cfg.grid = g;
        cfg.dt = 1e-2;
        cfg.coeffs = hpe::DriftCoeffs::isotropic(g, 1.0);
        cfg.enable_nonlinearity = false;
        hpe::SimState s;
        s.v = hpe::RealField(g, 2);
        for (int ix = 0; ix < g.nx; ++ix)
            for (int iy = 0; iy < g.ny; ++iy)
                for (int iz = 0; iz < g.nz; ++iz)
                    s.v.at(0, ix, iy, iz) =
                        std::sin(2.0 * std::numbers::pi * double(iy) / g.ny);
        hpe::SimState s1 = hpe::step(s, cfg);
        double factor = 1.0 / (1.0 + cfg.dt * 4.0 * std::numbers::pi * std::numbers::pi);
        double err = 0.0;
        for (std::size_t i = 0; i < s.v.values.size(); ++i)
            err = std::max(err, std::abs(s1.v.values[i] - factor * s.v.values[i]));
        check("heat resolvent step", err < 1e-12);
    }

    // Admissibility is preserved by the noisy nonlinear flow.
    {
        hpe::SolverConfig cfg;
        cfg.grid = g;
        cfg.dt = 1e-3;
        cfg.seed = seed;
        cfg.sigma = hpe::build_kraichnan(2, 4.0 / 3.0, 2);
        cfg.coeffs = hpe::stratonovich_drift_coeffs(cfg.sigma, g);
        hpe::SimState s;
        s.v = random_band_field(g, 2, seed ^ 0x616476u, 0.3, true);
        double worst = 0.0;
        auto watch = [&](const hpe::SimState&, const hpe::SimState& after,
                         const hpe::NoiseIncrement&) {
            worst = std::max(worst, hpe::barotropic_divergence(after.v));
        };
        hpe::simulate(cfg, s, 10 * cfg.dt, watch);
        check("admissibility preserved", worst < 1e-8);
    }

    std::printf("%d failure(s)\n", failures);
    return failures == 0 ? kExitOk : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"stochastic primitive equations on the 3-torus"};
    app.require_subcommand(1);

    std::string manifest_path;
    app.add_option("--manifest", manifest_path, "write the manifest here instead of stdout");

    // noise-gen
    auto* sc_noise = app.add_subcommand("noise-gen", "build a Kraichnan ensemble");
    int ng_d = 2, ng_kmax = 4;
    std::string ng_alpha = "1.3333333333333333";
    std::string ng_out;
    sc_noise->add_option("--d", ng_d, "spatial dimension of the ensemble (2 or 3)");
    sc_noise->add_option("--alpha", ng_alpha, "roughness exponent in (0,2]");
    sc_noise->add_option("--kmax", ng_kmax, "band limit");
    sc_noise->add_option("-o,--output", ng_out, "output file (default stdout)");

    // admissibility / exponents
    std::string p_s = "2", q_s = "2", d_s = "0", g_s = "1";
    auto add_params = [&](CLI::App* sc) {
        sc->add_option("--p", p_s, "time integrability (rational)");
        sc->add_option("--q", q_s, "horizontal integrability (rational)");
        sc->add_option("--delta", d_s, "smoothness offset (rational)");
        sc->add_option("--gamma", g_s, "noise Hoelder exponent (rational)");
    };
    auto* sc_adm = app.add_subcommand("admissibility", "check the parameter region");
    add_params(sc_adm);
    auto* sc_exp = app.add_subcommand("exponents", "critical exponents for a ParamSet");
    add_params(sc_exp);

    // simulate / montecarlo / continuity
    std::string config_path;
    std::uint64_t seed_flag = 0;
    bool strict = false;
    auto* sc_sim = app.add_subcommand("simulate", "integrate one trajectory");
    sc_sim->add_option("--config", config_path, "config file")->required();
    auto* seed_opt_sim = sc_sim->add_option("--seed", seed_flag, "override run.seed");
    sc_sim->add_flag("--strict", strict, "exit 3 when the Serrin monitor trips");

    auto* sc_mc = app.add_subcommand("montecarlo", "ensemble statistics over seeds");
    sc_mc->add_option("--config", config_path, "config file")->required();
    auto* seed_opt_mc = sc_mc->add_option("--seed", seed_flag, "override run.seed");

    auto* sc_cont = app.add_subcommand("continuity", "paired-path continuity experiment");
    sc_cont->add_option("--config", config_path, "config file")->required();
    auto* seed_opt_cont = sc_cont->add_option("--seed", seed_flag, "override run.seed");

    auto* sc_verify = app.add_subcommand("verify", "run the built-in invariant suite");
    std::uint64_t verify_seed = 7;
    sc_verify->add_option("--seed", verify_seed, "seed for the randomized checks");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sc_noise->parsed())
            return cmd_noise_gen(ng_d, ng_alpha, ng_kmax, ng_out, manifest_path);
        if (sc_adm->parsed())
            return cmd_admissibility(param_set(p_s, q_s, d_s, g_s), manifest_path);
        if (sc_exp->parsed())
            return cmd_exponents(param_set(p_s, q_s, d_s, g_s), manifest_path);
        if (sc_sim->parsed())
            return cmd_simulate(config_path, seed_flag, seed_opt_sim->count() > 0, strict,
                                manifest_path);
        if (sc_mc->parsed())
            return cmd_montecarlo(config_path, seed_flag, seed_opt_mc->count() > 0,
                                  manifest_path);
        if (sc_cont->parsed())
            return cmd_continuity(config_path, seed_flag, seed_opt_cont->count() > 0,
                                  manifest_path);
        if (sc_verify->parsed()) return cmd_verify(verify_seed, manifest_path);
    } catch (const hpe::BlowUpError& e) {
        std::cerr << "blow-up at t = " << e.t << " (step " << e.step << ")\n";
        return kExitBlowUp;
    } catch (const InadmissibleError& e) {
        std::cerr << "inadmissible parameters: " << e.what() << "\n";
        return kExitInadmissible;
    } catch (const std::domain_error& e) {
        std::cerr << "inadmissible parameters: " << e.what() << "\n";
        return kExitInadmissible;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitOk;
}
