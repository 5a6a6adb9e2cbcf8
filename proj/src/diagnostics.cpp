#include "qglab/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "qglab/errors.hpp"
#include "qglab/fields.hpp"

namespace qglab {

namespace {

double magnitude_max(const PhysicalField& a, const PhysicalField& b) {
    double m = 0.0;
    auto x = a.values();
    auto y = b.values();
    for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::hypot(x[i], y[i]));
    return m;
}

double recorded_lp(const NormRecord& r, double q) {
    if (q == 2.0) return r.lp.l2;
    if (q == 3.0) return r.lp.l3;
    if (q == 4.0) return r.lp.l4;
    if (std::isinf(q)) return r.lp.linf;
    throw ValidationError("max_principle_check supports q in {2, 3, 4, inf}");
}

}  // namespace

double lp_norm(const PhysicalField& f, double q) {
    if (!(q >= 1.0)) throw ValidationError("lp_norm requires q >= 1");
    auto v = f.values();
    if (std::isinf(q)) {
        double m = 0.0;
        for (double x : v) m = std::max(m, std::abs(x));
        return m;
    }
    double sum = 0.0;
    if (q == 2.0) {
        for (double x : v) sum += x * x;
    } else {
        for (double x : v) sum += std::pow(std::abs(x), q);
    }
    return std::pow(sum * f.grid().cell_area(), 1.0 / q);
}

double lp_norm(const PhysicalField& f1, const PhysicalField& f2, double q) {
    if (!(q >= 1.0)) throw ValidationError("lp_norm requires q >= 1");
    if (std::isinf(q)) return magnitude_max(f1, f2);
    auto x = f1.values();
    auto y = f2.values();
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) sum += std::pow(std::hypot(x[i], y[i]), q);
    return std::pow(sum * f1.grid().cell_area(), 1.0 / q);
}

double sobolev_norm(const SpectralField& f, double s) {
    if (s < 0.0 && f.mean() != Complex{}) throw NegativePowerOnMean();
    return std::sqrt(spectral_energy(f, s));
}

SpectralField dyadic_shell(const SpectralField& f, int j) {
    const double lo = std::ldexp(1.0, j);
    const double hi = 2.0 * lo;
    SpectralField out = f;
    out.for_each_mode([&](int k1, int k2, Complex& c) {
        const double k = std::hypot(double(k1), double(k2));
        if (!(k >= lo && k < hi)) c = 0.0;
    });
    return out;
}

double besov_norm(const SpectralField& f, double s) {
    const double kmax = std::sqrt(2.0) * (f.n() / 2);
    double sup = 0.0;
    for (int j = 0; std::ldexp(1.0, j) <= kmax; ++j) {
        const double block = lp_norm(inverse_transform(dyadic_shell(f, j)), 3.0);
        sup = std::max(sup, std::pow(2.0, j * s) * block);
    }
    return sup;
}

double ladder_bracket(const SpectralField& theta, double sigma) {
    if (!(sigma > 1.0)) throw ValidationError("ladder exponent sigma must exceed 1");
    const double h1 = sobolev_norm(theta, 1.0);
    const double hs = sobolev_norm(theta, sigma);
    return 1.0 + h1 * std::sqrt(std::log1p(std::pow(hs, 1.0 / (sigma - 1.0))));
}

NormRecord measure(const SpectralField& theta, double t, const ModelParams& p, const NormOptions& opts) {
    NormRecord r;
    r.t = t;
    r.s_index = opts.s;
    const PhysicalField th = inverse_transform(theta);
    r.lp.l2 = lp_norm(th, 2.0);
    r.lp.l3 = lp_norm(th, 3.0);
    r.lp.l4 = lp_norm(th, 4.0);
    r.lp.linf = lp_norm(th, kInfinity);

    const Velocity vel = riesz_velocity(theta);
    r.u_inf = magnitude_max(inverse_transform(vel.u1), inverse_transform(vel.u2));
    r.q_inf = r.lp.linf + r.u_inf;

    for (double s : {opts.s, 1.0, p.alpha, opts.sigma}) r.hs[s] = sobolev_norm(theta, s);
    for (double s : opts.extra_sobolev) r.hs[s] = sobolev_norm(theta, s);

    r.energy = spectral_energy(theta, 0.0);
    const double ha = r.hs.at(p.alpha);
    r.mod_energy = r.energy + (p.model == Model::regularized ? p.mu * ha * ha : 0.0);
    r.ladder = 1.0 + r.hs.at(1.0) * std::sqrt(std::log1p(std::pow(r.hs.at(opts.sigma), 1.0 / (opts.sigma - 1.0))));
    if (opts.besov_s) {
        SpectralField zero_mean = theta;
        zero_mean.at(0, 0) = 0.0;
        r.besov = std::make_pair(*opts.besov_s, besov_norm(zero_mean, *opts.besov_s));
    }
    return r;
}

MaxPrincipleReport max_principle_check(const std::vector<NormRecord>& series, double q, double forcing_lq,
                                       double slack_rel) {
    if (series.empty()) throw ValidationError("max_principle_check needs a nonempty series");
    MaxPrincipleReport rep;
    rep.q = q;
    const double base = recorded_lp(series.front(), q);
    const double t0 = series.front().t;
    rep.slack = slack_rel * base;
    rep.worst_margin = -kInfinity;
    for (const auto& rec : series) {
        const double bound = base + (rec.t - t0) * forcing_lq + rep.slack;
        const double margin = recorded_lp(rec, q) - bound;
        if (margin > rep.worst_margin) {
            rep.worst_margin = margin;
            rep.worst_time = rec.t;
        }
        if (margin > 0.0) throw Violation("maximum principle violated for q = " + std::to_string(q), rec.t);
    }
    return rep;
}

double energy_balance_residual(const std::vector<NormRecord>& series, double kappa, double alpha) {
    if (series.empty()) throw ValidationError("energy_balance_residual needs a nonempty series");
    const double e0 = series.front().energy;
    if (!(e0 > 0.0)) return 0.0;
    double integral = 0.0;
    double worst = 0.0;
    for (std::size_t i = 0; i < series.size(); ++i) {
        if (i > 0) {
            const double a = series[i - 1].hs.at(alpha);
            const double b = series[i].hs.at(alpha);
            integral += 0.5 * (series[i].t - series[i - 1].t) * (a * a + b * b);
        }
        worst = std::max(worst, std::abs(series[i].energy + 2.0 * kappa * integral - e0) / e0);
    }
    return worst;
}

CriticalMonitor critical_monitor(const SpectralField& theta, const ModelParams& p, const MonitorConstants& c) {
    CriticalMonitor m;
    const Velocity vel = riesz_velocity(theta);
    m.q_inf = lp_norm(inverse_transform(theta), kInfinity) +
              magnitude_max(inverse_transform(vel.u1), inverse_transform(vel.u2));
    m.ladder = ladder_bracket(theta, c.sigma);
    m.small_data = c.c0 > 0.0 && m.q_inf < p.kappa / c.c0;
    m.ladder_ok = m.ladder <= c.c * p.kappa;
    return m;
}

double log_bound_ratio(const SpectralField& f, double sigma) {
    return lp_norm(inverse_transform(f), kInfinity) / ladder_bracket(f, sigma);
}

LogBoundResult log_bound_check(int trials, double sigma, int mode_cap, std::uint64_t seed) {
    if (trials < 1) throw ValidationError("log_bound_check needs at least one trial");
    if (mode_cap < 1) throw ValidationError("mode_cap must be >= 1");
    int n = 16;
    while (n < 4 * mode_cap) n *= 2;
    const Grid grid(n);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> gamma_dist(1.0, 3.0);
    LogBoundResult res;
    res.trials = trials;
    res.grid_n = n;
    double sum = 0.0;
    for (int i = 0; i < trials; ++i) {
        const double gamma = gamma_dist(rng);
        const SpectralField f = random_shell_field(grid, mode_cap, gamma, rng);
        const double ratio = log_bound_ratio(f, sigma);
        res.max_ratio = std::max(res.max_ratio, ratio);
        sum += ratio;
    }
    res.mean_ratio = sum / trials;
    return res;
}

double gn_check(const SpectralField& f, double s, double alpha, double beta) {
    if (!(beta > 0.0 && beta < alpha)) throw ValidationError("gn_check requires 0 < beta < alpha");
    if (f.mean() != Complex{}) throw ValidationError("gn_check requires a zero-mean field");
    const double lhs = sobolev_norm(f, s + beta);
    const double theta = beta / alpha;
    const double rhs = std::pow(sobolev_norm(f, s + alpha), theta) * std::pow(sobolev_norm(f, s), 1.0 - theta);
    return lhs - rhs;
}

GnSweepResult gn_sweep(int trials, double s, double alpha, double beta, std::uint64_t seed, int n) {
    const Grid grid(n);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> gamma_dist(0.5, 3.0);
    std::uniform_real_distribution<double> cap_dist(1.0, n / 2 - 1);
    GnSweepResult res;
    res.trials = trials;
    res.max_relative_residual = -kInfinity;
    for (int i = 0; i < trials; ++i) {
        const double gamma = gamma_dist(rng);
        const double cap = cap_dist(rng);
        const SpectralField f = random_shell_field(grid, cap, gamma, rng);
        const double theta = beta / alpha;
        const double rhs = std::pow(sobolev_norm(f, s + alpha), theta) * std::pow(sobolev_norm(f, s), 1.0 - theta);
        res.max_relative_residual = std::max(res.max_relative_residual, gn_check(f, s, alpha, beta) / rhs);
    }
    return res;
}

const char* to_string(ConvexTag g) noexcept { return g == ConvexTag::half_square ? "half-square" : "sqrt1p"; }

ConvexTag convex_from_string(const std::string& s) {
    if (s == "half-square" || s == "half_square") return ConvexTag::half_square;
    if (s == "sqrt1p") return ConvexTag::sqrt1p;
    throw ValidationError("unknown convex function '" + s + "' (expected half-square or sqrt1p)");
}

double ConvexG::value(double x) const noexcept {
    return tag == ConvexTag::half_square ? 0.5 * x * x : std::sqrt(1.0 + x * x);
}

double ConvexG::d1(double x) const noexcept { return tag == ConvexTag::half_square ? x : x / std::sqrt(1.0 + x * x); }

double ConvexG::d2(double x) const noexcept {
    if (tag == ConvexTag::half_square) return 1.0;
    const double r = std::sqrt(1.0 + x * x);
    return 1.0 / (r * r * r);
}

FluxEstimate dr_flux(const SpectralField& theta, double eps, const ConvexG& g, const FluxOptions& opts) {
    if (!(eps > 0.0)) throw ValidationError("dr_flux requires eps > 0");
    if (opts.stencil < 3 || opts.stencil % 2 == 0) throw ValidationError("stencil size must be odd and >= 3");
    const Grid& grid = theta.grid();
    const Mollifier moll{opts.profile, eps};
    const std::size_t np = grid.physical_size();
    const double area = grid.cell_area();

    const Velocity vel = riesz_velocity(theta);
    const PhysicalField th = inverse_transform(theta);
    const PhysicalField u1 = inverse_transform(vel.u1);
    const PhysicalField u2 = inverse_transform(vel.u2);

    const SpectralField theta_eps_hat = mollify(theta, moll);
    const PhysicalField th_e = inverse_transform(theta_eps_hat);
    const PhysicalField u1_e = inverse_transform(mollify(vel.u1, moll));
    const PhysicalField u2_e = inverse_transform(mollify(vel.u2, moll));
    const PhysicalField f1_e = inverse_transform(mollify(forward_transform(multiply(u1, th)), moll));
    const PhysicalField f2_e = inverse_transform(mollify(forward_transform(multiply(u2, th)), moll));
    const PhysicalField gx = inverse_transform(derivative(theta_eps_hat, 1));
    const PhysicalField gy = inverse_transform(derivative(theta_eps_hat, 2));

    std::vector<double> s1(np), s2(np);
    FluxEstimate est;
    est.eps = eps;
    est.profile = opts.profile;
    double l1 = 0.0, flux = 0.0, dr = 0.0;
    std::vector<double> field;
    if (opts.keep_field) field.resize(np);
    for (std::size_t i = 0; i < np; ++i) {
        s1[i] = u1_e.values()[i] * th_e.values()[i] - f1_e.values()[i];
        s2[i] = u2_e.values()[i] * th_e.values()[i] - f2_e.values()[i];
        l1 += std::hypot(s1[i], s2[i]);
        const double dot = s1[i] * gx.values()[i] + s2[i] * gy.values()[i];
        flux += dot;
        const double local = -g.d2(th_e.values()[i]) * dot;
        dr += local;
        if (opts.keep_field) field[i] = local;
    }
    est.sigma_l1 = l1 * area;
    est.flux_integral = flux * area;
    est.dr_integral = dr * area;
    if (opts.keep_field) est.dr_field = PhysicalField(grid, std::move(field));

    if (!opts.decomposition) {
        est.r_l32 = std::numeric_limits<double>::quiet_NaN();
        return est;
    }

    // r^eps(u, theta)(x) = int phi(y) (u(x - eps y) - u(x)) (theta(x - eps y) - theta(x)) dy,
    // tensor stencil on [-3, 3]^2 with weights phi(|y|) renormalized to unit sum.
    const int m = opts.stencil;
    const double h = 6.0 / (m - 1);
    std::vector<double> offsets(m), weights(std::size_t(m) * m);
    for (int a = 0; a < m; ++a) offsets[a] = -3.0 + a * h;
    double wsum = 0.0;
    for (int b = 0; b < m; ++b)
        for (int a = 0; a < m; ++a) {
            const double w = moll.kernel(std::hypot(offsets[a], offsets[b]));
            weights[std::size_t(b) * m + a] = w;
            wsum += w;
        }
    for (auto& w : weights) w /= wsum;

    const int n = grid.n();
    std::vector<double> r1(np, 0.0), r2(np, 0.0);
    SpectralField sh_t(grid), sh_u1(grid), sh_u2(grid);
    std::vector<Complex> ph1(n / 2 + 1), ph2(n);
    for (int b = 0; b < m; ++b) {
        for (int a = 0; a < m; ++a) {
            if (a == m / 2 && b == m / 2) continue;
            const double w = weights[std::size_t(b) * m + a];
            const double d1 = eps * offsets[a];
            const double d2 = eps * offsets[b];
            for (int k1 = 0; k1 <= n / 2; ++k1) ph1[k1] = std::polar(1.0, -k1 * d1);
            for (int r = 0; r < n; ++r) ph2[r] = std::polar(1.0, -grid.wavenumber(r) * d2);
            auto apply = [&](const SpectralField& src, SpectralField& dst) {
                auto s = src.data();
                auto d = dst.data();
                std::size_t idx = 0;
                for (int r = 0; r < n; ++r) {
                    const bool nyq_row = r == n / 2;
                    for (int k1 = 0; k1 <= n / 2; ++k1, ++idx) {
                        const Complex p = ph1[k1] * ph2[r];
                        d[idx] = (nyq_row || k1 == n / 2) ? s[idx] * p.real() : s[idx] * p;
                    }
                }
            };
            apply(theta, sh_t);
            apply(vel.u1, sh_u1);
            apply(vel.u2, sh_u2);
            const PhysicalField ts = inverse_transform(sh_t);
            const PhysicalField u1s = inverse_transform(sh_u1);
            const PhysicalField u2s = inverse_transform(sh_u2);
            for (std::size_t i = 0; i < np; ++i) {
                const double dth = ts.values()[i] - th.values()[i];
                r1[i] += w * (u1s.values()[i] - u1.values()[i]) * dth;
                r2[i] += w * (u2s.values()[i] - u2.values()[i]) * dth;
            }
        }
    }

    double r32 = 0.0, defect = 0.0;
    for (std::size_t i = 0; i < np; ++i) {
        r32 += std::pow(std::hypot(r1[i], r2[i]), 1.5);
        const double dth = th.values()[i] - th_e.values()[i];
        const double d1 = (u1.values()[i] - u1_e.values()[i]) * dth - r1[i];
        const double d2 = (u2.values()[i] - u2_e.values()[i]) * dth - r2[i];
        defect += std::hypot(s1[i] - d1, s2[i] - d2);
    }
    est.r_l32 = std::pow(r32 * area, 2.0 / 3.0);
    est.decomposition_defect = est.sigma_l1 > 0.0 ? defect * area / est.sigma_l1 : defect * area;
    return est;
}

}  // namespace qglab
