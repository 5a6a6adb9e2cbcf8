#include "qglab/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "qglab/qglab.hpp"

namespace qglab {

namespace {

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

std::vector<double> parse_list(const std::string& s, const char* what) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            out.push_back(std::stod(item, &pos));
            if (pos != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ValidationError(std::string("malformed ") + what + " list '" + s + "'");
        }
    }
    if (out.empty()) throw ValidationError(std::string("empty ") + what + " list");
    return out;
}

void print_certificate(std::ostream& out, const PicardCertificate& c) {
    out << "R = " << num(c.R) << "\n"
        << "T = " << num(c.T) << "\n"
        << "s = " << num(c.s) << "\n"
        << "nodes = " << c.nodes << " (refinements " << c.refinements << ")\n"
        << "iterations = " << c.iterations << "\n"
        << "converged = " << (c.converged ? "yes" : "no") << "\n"
        << "ratios =";
    for (double r : c.ratios) out << ' ' << num(r);
    out << "\nmax_ratio = " << num(c.max_ratio()) << "\n";
}

int cmd_simulate(const std::string& config_path, const std::string& output_override, std::ostream& out) {
    RunConfig cfg = load_config(config_path);
    if (!output_override.empty()) cfg.output_dir = output_override;
    const SpectralField theta0 = initial_condition(cfg);
    const ModelParams p = cfg.model_params();
    const StepperConfig sc = cfg.stepper();

    std::filesystem::create_directories(cfg.output_dir);
    const RunResult res = run(theta0, p, sc, RunOptions{cfg.norm_options(), {}});
    const std::filesystem::path dir(cfg.output_dir);
    write_series((dir / "series.csv").string(), res.records);
    for (std::size_t i = 0; i < res.trajectory.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "snap_%06zu.qgw", i);
        save_snapshot((dir / name).string(), res.trajectory[i]);
    }
    const NormRecord& last = res.records.back();
    out << "model = " << to_string(p.model) << ", n = " << cfg.n << ", steps = " << sc.steps() << "\n"
        << "t_final = " << num(last.t) << "\n"
        << "energy_drift = " << num(last.balance_residual) << "\n"
        << "cfl_estimate = " << num(res.cfl_estimate) << (cfg.dt > res.cfl_estimate ? " (dt exceeds estimate)" : "")
        << "\n"
        << "series = " << (dir / "series.csv").string() << " (" << res.records.size() << " rows)\n"
        << "snapshots = " << res.trajectory.size() << "\n";
    return 0;
}

int cmd_picard(const std::string& config_path, const PicardOptions& opts, double horizon, std::ostream& out) {
    const RunConfig cfg = load_config(config_path);
    const SpectralField theta0 = initial_condition(cfg);
    const ModelParams p = cfg.model_params();
    if (horizon > 0.0) {
        const ContinuationResult res = continue_solution(theta0, p, opts, horizon);
        double worst = 0.0;
        for (const auto& c : res.certificates) worst = std::max(worst, c.max_ratio());
        out << "segments = " << res.certificates.size() << "\n"
            << "reached = " << num(res.reached) << "\n"
            << "max_ratio = " << num(worst) << "\n"
            << "final_hs = " << num(sobolev_norm(res.states.back(), opts.s)) << "\n";
        return 0;
    }
    const PicardResult res = picard_solve(theta0, p, opts);
    print_certificate(out, res.certificate);
    return 0;
}

int cmd_norms(const std::string& path, const std::string& s_list, const std::string& q_list, double sigma,
              double besov_s, bool want_besov, std::ostream& out) {
    const Snapshot snap = load_snapshot(path);
    const SpectralField theta = snap.spectral();
    ModelParams p;
    p.model = snap.model;
    p.alpha = snap.alpha;
    p.kappa = snap.kappa;
    p.mu = snap.mu;
    out << "t = " << num(snap.t) << "\nmodel = " << to_string(snap.model) << "\nn = " << snap.theta.n() << "\n";
    for (double q : parse_list(q_list, "q")) out << "L" << num(q) << " = " << num(lp_norm(snap.theta, q)) << "\n";
    for (double s : parse_list(s_list, "s")) out << "H" << num(s) << " = " << num(sobolev_norm(theta, s)) << "\n";
    const double h_alpha = sobolev_norm(theta, p.alpha);
    out << "energy = " << num(spectral_energy(theta)) << "\n"
        << "mod_energy = " << num(spectral_energy(theta) + snap.mu * h_alpha * h_alpha) << "\n";
    MonitorConstants mc;
    mc.sigma = sigma;
    const CriticalMonitor cm = critical_monitor(theta, p, mc);
    out << "q_inf = " << num(cm.q_inf) << "\nladder = " << num(cm.ladder) << "\n";
    if (want_besov) {
        SpectralField zm = theta;
        zm.at(0, 0) = 0.0;
        out << "besov(" << num(besov_s) << ") = " << num(besov_norm(zm, besov_s)) << "\n";
    }
    return 0;
}

struct FluxArgs {
    std::string snapshot;
    std::string eps_list = "0.25,0.125,0.0625,0.03125,0.015625";
    std::string g = "half-square";
    std::string mollifier = "gaussian";
    double s = 0.5;
    int n = 256;
    double kmax = 0;
    std::uint64_t seed = 1;
    bool decomposition = false;
};

int cmd_flux(const FluxArgs& a, std::ostream& out) {
    const ConvexG g{convex_from_string(a.g)};
    FluxOptions opts;
    opts.profile = mollifier_profile_from_string(a.mollifier);
    opts.decomposition = a.decomposition;
    SpectralField theta = [&] {
        if (!a.snapshot.empty()) return load_snapshot(a.snapshot).spectral();
        const Grid grid(a.n);
        const double kmax = a.kmax > 0 ? a.kmax : a.n / 4 - 1;
        return synthetic_besov_field(grid, a.s, kmax, a.seed);
    }();
    const auto eps = parse_list(a.eps_list, "eps");
    out << "mollifier = " << to_string(opts.profile) << ", G = " << to_string(g.tag) << "\n";
    out << "eps,sigma_l1,r_l32,flux_integral,dr_integral,decomposition_defect\n";
    std::vector<double> flux;
    for (double e : eps) {
        const FluxEstimate est = dr_flux(theta, e, g, opts);
        flux.push_back(std::abs(est.flux_integral));
        out << num(e) << ',' << num(est.sigma_l1) << ',' << num(est.r_l32) << ',' << num(est.flux_integral) << ','
            << num(est.dr_integral) << ',' << num(est.decomposition_defect) << "\n";
    }
    out << "fitted_exponent = " << num(fit_loglog_slope(eps, flux, 1e-14)) << "\n";
    return 0;
}

int cmd_compare_mu(const std::string& config_path, const std::string& mu_list, std::ostream& out) {
    const RunConfig cfg = load_config(config_path);
    const SpectralField theta0 = initial_condition(cfg);
    MuSweepConfig mc;
    mc.dt = cfg.dt;
    mc.t_end = cfg.t_end;
    mc.diag_every = cfg.diag_every;
    mc.dealias = cfg.dealias;
    const MuSweepResult res = compare_mu(theta0, cfg.alpha, parse_list(mu_list, "mu"), mc);
    out << "mu,sup_l2_error,sup_energy_error\n";
    for (std::size_t i = 0; i < res.mu_list.size(); ++i)
        out << num(res.mu_list[i]) << ',' << num(res.l2_errors[i]) << ',' << num(res.energy_errors[i]) << "\n";
    out << "slope_l2 = " << num(res.slope_l2) << "\n"
        << "slope_energy = " << num(res.slope_energy) << "\n"
        << "monotone = " << (res.monotone ? "yes" : "no") << "\n"
        << "reference_self_error = " << num(res.reference_self_error) << " (dt_ref = " << num(res.reference_dt)
        << ")\n";
    return 0;
}

struct InequalityArgs {
    std::string lemma = "gn";
    int trials = 1000;
    double sigma = 2.0;
    std::uint64_t seed = 0;
    int mode_cap = 32;
    double s = 0.5;
    double alpha = 1.0;
    double beta = 0.5;
};

int cmd_check_inequality(const InequalityArgs& a, std::ostream& out) {
    if (a.lemma == "gn") {
        const GnSweepResult r = gn_sweep(a.trials, a.s, a.alpha, a.beta, a.seed);
        out << "lemma = gn\ntrials = " << r.trials << "\nmax_relative_residual = " << num(r.max_relative_residual)
            << "\nholds = " << (r.max_relative_residual <= 1e-12 ? "yes" : "no") << "\n";
        return 0;
    }
    if (a.lemma == "log") {
        const LogBoundResult r = log_bound_check(a.trials, a.sigma, a.mode_cap, a.seed);
        out << "lemma = log\ntrials = " << r.trials << "\ngrid_n = " << r.grid_n
            << "\nempirical_constant = " << num(r.max_ratio) << "\nmean_ratio = " << num(r.mean_ratio) << "\n";
        return 0;
    }
    throw ValidationError("--lemma must be gn or log");
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"qglab: pseudo-spectral laboratory for inviscid, dissipative and regularized QG models"};
    app.require_subcommand(1);

    std::string config, output_dir;
    auto* simulate = app.add_subcommand("simulate", "integrate a configured run, write series.csv and snapshots");
    simulate->add_option("--config", config, "run configuration (key=value)")->required();
    simulate->add_option("--output-dir", output_dir, "override output_dir from the config");

    PicardOptions popts;
    double horizon = 0.0;
    auto* picard = app.add_subcommand("picard", "contraction-mapping local solve of the regularized model");
    picard->add_option("--config", config, "run configuration (model=regularized)")->required();
    picard->add_option("--s", popts.s, "Sobolev index of the contraction norm (> 1)");
    picard->add_option("--tol", popts.tol, "stopping tolerance");
    picard->add_option("--max-iter", popts.max_iter, "iteration cap");
    picard->add_option("--nodes", popts.nodes, "Simpson nodes on [0, T] (odd, >= 33)");
    picard->add_option("--horizon", horizon, "continue the solution segment by segment up to this time");

    std::string snapshot, s_list = "0,0.5,1,2", q_list = "2,3,4,inf";
    double sigma = 2.0, besov_s = 1.0 / 3.0;
    auto* norms = app.add_subcommand("norms", "norms and monitors of a snapshot");
    norms->add_option("--snapshot", snapshot, "snapshot file")->required();
    norms->add_option("--s", s_list, "comma-separated Sobolev indices");
    norms->add_option("--q", q_list, "comma-separated Lebesgue exponents (inf allowed)");
    norms->add_option("--sigma", sigma, "ladder exponent (> 1)");
    auto* besov_opt = norms->add_option("--besov", besov_s, "also report the dyadic Besov estimate at this index");

    FluxArgs fa;
    auto* flux = app.add_subcommand("flux", "Duchon-Robert flux over a list of mollification scales");
    flux->add_option("--snapshot", fa.snapshot, "snapshot file (default: synthetic field)");
    flux->add_option("--eps", fa.eps_list, "comma-separated scales");
    flux->add_option("--g", fa.g, "convex function: half-square or sqrt1p");
    flux->add_option("--s", fa.s, "regularity of the synthetic field");
    flux->add_option("--n", fa.n, "grid size of the synthetic field");
    flux->add_option("--kmax", fa.kmax, "spectral cutoff of the synthetic field (default n/4 - 1)");
    flux->add_option("--seed", fa.seed, "seed of the synthetic field");
    flux->add_option("--mollifier", fa.mollifier, "gaussian or raised-cosine");
    flux->add_flag("--decomposition", fa.decomposition, "also evaluate r^eps by stencil quadrature");

    std::string mu_list = "0.1,0.03,0.01,0.003,0.001";
    auto* cmp = app.add_subcommand("compare-mu", "mu -> 0 convergence sweep against the inviscid reference");
    cmp->add_option("--config", config, "run configuration (init, alpha, n, dt, t_end)")->required();
    cmp->add_option("--mu-list", mu_list, "comma-separated, strictly decreasing");

    InequalityArgs ia;
    auto* ineq = app.add_subcommand("check-inequality", "interpolation inequality checks over seeded fields");
    ineq->add_option("--lemma", ia.lemma, "gn or log");
    ineq->add_option("--trials", ia.trials, "number of random fields");
    ineq->add_option("--sigma", ia.sigma, "log bound exponent (> 1)");
    ineq->add_option("--seed", ia.seed, "RNG seed");
    ineq->add_option("--mode-cap", ia.mode_cap, "band limit |k| <= mode-cap (log bound)");
    ineq->add_option("--s", ia.s, "base index s (gn)");
    ineq->add_option("--alpha", ia.alpha, "upper increment alpha (gn)");
    ineq->add_option("--beta", ia.beta, "intermediate increment, 0 < beta < alpha (gn)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return 1;
    }

    try {
        if (*simulate) return cmd_simulate(config, output_dir, out);
        if (*picard) return cmd_picard(config, popts, horizon, out);
        if (*norms) return cmd_norms(snapshot, s_list, q_list, sigma, besov_s, besov_opt->count() > 0, out);
        if (*flux) return cmd_flux(fa, out);
        if (*cmp) return cmd_compare_mu(config, mu_list, out);
        if (*ineq) return cmd_check_inequality(ia, out);
    } catch (const ValidationError& e) {
        err << "validation error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    err << app.help();
    return 1;
}

}  // namespace qglab
