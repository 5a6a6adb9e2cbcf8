#include "qglab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qglab/errors.hpp"
#include "qglab/fields.hpp"

namespace qglab {

double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y, double floor) {
    if (x.size() != y.size()) throw ValidationError("fit_loglog_slope: size mismatch");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(y[i] > floor) || !(x[i] > 0.0)) continue;
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++m;
    }
    if (m < 2) return std::numeric_limits<double>::quiet_NaN();
    const double den = m * sxx - sx * sx;
    if (den == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return (m * sxy - sx * sy) / den;
}

MuSweepResult compare_mu(const SpectralField& theta0, double alpha, const std::vector<double>& mu_list,
                         const MuSweepConfig& cfg) {
    if (mu_list.empty()) throw ValidationError("mu_list must not be empty");
    for (std::size_t i = 0; i < mu_list.size(); ++i) {
        if (!(mu_list[i] > 0.0)) throw ValidationError("every mu must be positive");
        if (i > 0 && !(mu_list[i] < mu_list[i - 1])) throw ValidationError("mu_list must be strictly decreasing");
    }

    StepperConfig coarse;
    coarse.dt = cfg.dt;
    coarse.t_end = cfg.t_end;
    coarse.diag_every = cfg.diag_every;
    coarse.dealias = cfg.dealias;
    StepperConfig fine = coarse;
    fine.dt = 0.5 * cfg.dt;
    fine.diag_every = 2 * cfg.diag_every;

    const ModelParams inviscid = ModelParams::inviscid();
    std::vector<SpectralField> reference;
    RunOptions ref_opts;
    ref_opts.observer = [&](double, const SpectralField& th) { reference.push_back(th); };
    run(theta0, inviscid, fine, ref_opts);

    MuSweepResult res;
    res.mu_list = mu_list;
    res.reference_dt = fine.dt;
    {
        std::size_t i = 0;
        RunOptions opts;
        opts.observer = [&](double, const SpectralField& th) {
            res.reference_self_error = std::max(res.reference_self_error, sobolev_norm(th - reference.at(i++), 0.0));
        };
        run(theta0, inviscid, coarse, opts);
    }

    for (double mu : mu_list) {
        const ModelParams p = ModelParams::regularized(mu, alpha);
        double l2 = 0.0, en = 0.0;
        std::size_t i = 0;
        RunOptions opts;
        opts.observer = [&](double, const SpectralField& th) {
            const SpectralField w = th - reference.at(i++);
            const double a = sobolev_norm(w, 0.0);
            const double b = sobolev_norm(w, alpha);
            l2 = std::max(l2, a);
            en = std::max(en, a * a + mu * b * b);
        };
        run(theta0, p, coarse, opts);
        res.l2_errors.push_back(l2);
        res.energy_errors.push_back(en);
    }

    double smallest = std::numeric_limits<double>::infinity();
    for (double e : res.l2_errors)
        if (e > 0.0) smallest = std::min(smallest, e);
    if (std::isfinite(smallest) && res.reference_self_error > cfg.reference_fraction * smallest)
        throw ReferenceTooCoarse("reference self-convergence error " + std::to_string(res.reference_self_error) +
                                 " exceeds " + std::to_string(cfg.reference_fraction) + " x smallest mu-error " +
                                 std::to_string(smallest));

    for (std::size_t i = 1; i < res.l2_errors.size(); ++i)
        if (res.l2_errors[i] > res.l2_errors[i - 1]) res.monotone = false;
    res.slope_l2 = fit_loglog_slope(mu_list, res.l2_errors);
    res.slope_energy = fit_loglog_slope(mu_list, res.energy_errors);
    return res;
}

BlowupWatch blowup_watch(const std::vector<NormRecord>& records, double s, double mu, double m_threshold) {
    if (records.empty()) throw ValidationError("blowup_watch needs a nonempty series");
    BlowupWatch w;
    double ti = 0.0, ui = 0.0;
    auto z_of = [&](const NormRecord& r) {
        const double a = r.hs.at(s - 0.5);
        const double b = r.hs.at(s);
        return a * a + mu * b * b;
    };
    const double z0 = z_of(records.front());
    for (std::size_t i = 0; i < records.size(); ++i) {
        const NormRecord& r = records[i];
        if (i > 0) {
            const NormRecord& p = records[i - 1];
            const double dt = r.t - p.t;
            ti += 0.5 * dt * (p.lp.linf + r.lp.linf);
            ui += 0.5 * dt * (p.u_inf + r.u_inf);
            const double z = z_of(r);
            const double zp = z_of(p);
            if (r.t > records.front().t && z0 > 0.0)
                w.envelope_rate = std::max(w.envelope_rate, std::log(z / z0) / (r.t - records.front().t));
            const double zm = 0.5 * (z + zp);
            if (dt > 0.0 && zm > 0.0) {
                const double denom = zm * std::sqrt(1.0 + std::log(std::max(zm, 1.0)));
                w.z_ode_constant = std::max(w.z_ode_constant, (z - zp) / dt / denom);
            }
        }
        w.times.push_back(r.t);
        w.theta_inf_integral.push_back(ti);
        w.u_inf_integral.push_back(ui);
        w.h1.push_back(r.hs.at(1.0));
        w.hs.push_back(r.hs.at(s));
        w.extension_guaranteed.push_back(ti < m_threshold && ui < m_threshold);
    }
    return w;
}

FluxScaling flux_scaling(const SpectralField& theta, const std::vector<double>& eps_list, const ConvexG& g,
                         MollifierProfile profile) {
    FluxScaling out;
    FluxOptions opts;
    opts.profile = profile;
    opts.decomposition = false;
    int usable = 0;
    for (double eps : eps_list) {
        const FluxEstimate est = dr_flux(theta, eps, g, opts);
        out.eps.push_back(eps);
        out.flux.push_back(std::abs(est.flux_integral));
        if (out.flux.back() > 1e-14) ++usable;
    }
    if (usable < 2) throw DegenerateFit("flux values fall below 1e-14; field too smooth to fit an exponent");
    out.exponent = fit_loglog_slope(out.eps, out.flux, 1e-14);
    return out;
}

SpectralField synthetic_besov_field(const Grid& grid, double s, double kmax, std::uint64_t seed) {
    return random_shell_field(grid, kmax, s + 1.0, seed);
}

}  // namespace qglab
