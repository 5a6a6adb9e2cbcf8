#include "qglab/timestepper.hpp"

#include <algorithm>
#include <cmath>

#include "qglab/errors.hpp"

namespace qglab {

const char* to_string(Scheme s) noexcept { return s == Scheme::etd_rk4 ? "etd-rk4" : "rk4"; }

Scheme scheme_from_string(const std::string& s) {
    if (s == "etd-rk4" || s == "etd_rk4") return Scheme::etd_rk4;
    if (s == "rk4") return Scheme::rk4;
    throw ValidationError("unknown scheme '" + s + "' (expected etd-rk4 or rk4)");
}

void StepperConfig::validate() const {
    if (!(dt > 0.0)) throw ValidationError("dt must be positive");
    if (!(t_end > 0.0)) throw ValidationError("t_end must be positive");
    if (diag_every < 1) throw ValidationError("diag_every must be >= 1");
    if (snapshot_every < 0) throw ValidationError("snapshot_every must be >= 0");
    steps();
}

long StepperConfig::steps() const {
    const double ratio = t_end / dt;
    const long n = std::lround(ratio);
    if (n < 1 || std::abs(ratio - double(n)) > 1e-8 * std::max(1.0, ratio))
        throw ValidationError("t_end must be a positive integer multiple of dt");
    return n;
}

double cfl_limit(const SpectralField& theta, double courant) {
    const Velocity v = riesz_velocity(theta);
    const double umax = lp_norm(inverse_transform(v.u1), inverse_transform(v.u2), kInfinity);
    const double kmax = theta.n() / 3.0;
    return umax > 0.0 ? courant / (umax * kmax) : kInfinity;
}

// ---------------------------------------------------------------------------

Stepper::Stepper(const Grid& grid, ModelParams params, double dt, Scheme scheme, bool dealias)
    : grid_(grid), params_(std::move(params)), dt_(dt), scheme_(scheme), dealias_(dealias) {
    params_.validate();
    if (!(dt > 0.0)) throw ValidationError("dt must be positive");
    if (params_.forcing && !(params_.forcing->grid() == grid_)) throw ValidationError("forcing lives on a different grid");
    split_linear_ = params_.model == Model::dissipative && scheme_ == Scheme::etd_rk4;
    if (split_linear_) {
        full_.resize(grid_.spectral_size());
        half_.resize(grid_.spectral_size());
        const int n = grid_.n();
        std::size_t idx = 0;
        for (int r = 0; r < n; ++r) {
            const int k2 = grid_.wavenumber(r);
            for (int k1 = 0; k1 <= n / 2; ++k1, ++idx) {
                const double L = dissipation_symbol(k1, k2, params_.kappa, params_.alpha);
                full_[idx] = std::exp(-L * dt_);
                half_[idx] = std::exp(-0.5 * L * dt_);
            }
        }
    }
}

void Stepper::scale(SpectralField& f, const std::vector<double>& factor) const {
    auto d = f.data();
    for (std::size_t i = 0; i < d.size(); ++i) d[i] *= factor[i];
}

SpectralField Stepper::nonlinear_rhs(const SpectralField& theta) const {
    if (!split_linear_) return rhs(theta, params_, dealias_);
    SpectralField out = rhs_inviscid(theta, dealias_);
    if (params_.forcing) out += *params_.forcing;
    return out;
}

SpectralField Stepper::step(const SpectralField& theta, double t) const {
    const double dt = dt_;
    SpectralField next(grid_);
    if (split_linear_) {
        const SpectralField k1 = nonlinear_rhs(theta);
        SpectralField a = theta;
        a.axpy(0.5 * dt, k1);
        scale(a, half_);
        const SpectralField k2 = nonlinear_rhs(a);

        SpectralField eh_theta = theta;
        scale(eh_theta, half_);
        SpectralField b = eh_theta;
        b.axpy(0.5 * dt, k2);
        const SpectralField k3 = nonlinear_rhs(b);

        SpectralField e_theta = theta;
        scale(e_theta, full_);
        SpectralField eh_k3 = k3;
        scale(eh_k3, half_);
        SpectralField c = e_theta;
        c.axpy(dt, eh_k3);
        const SpectralField k4 = nonlinear_rhs(c);

        SpectralField e_k1 = k1;
        scale(e_k1, full_);
        SpectralField mid = k2;
        mid += k3;
        scale(mid, half_);

        next = e_theta;
        next.axpy(dt / 6.0, e_k1);
        next.axpy(dt / 3.0, mid);
        next.axpy(dt / 6.0, k4);
    } else {
        const SpectralField k1 = nonlinear_rhs(theta);
        SpectralField a = theta;
        a.axpy(0.5 * dt, k1);
        const SpectralField k2 = nonlinear_rhs(a);
        SpectralField b = theta;
        b.axpy(0.5 * dt, k2);
        const SpectralField k3 = nonlinear_rhs(b);
        SpectralField c = theta;
        c.axpy(dt, k3);
        const SpectralField k4 = nonlinear_rhs(c);

        next = theta;
        next.axpy(dt / 6.0, k1);
        next.axpy(dt / 3.0, k2);
        next.axpy(dt / 3.0, k3);
        next.axpy(dt / 6.0, k4);
    }
    if (!next.all_finite() || next.max_abs() > kBlowupSentinel)
        throw UnstableStep("coefficient magnitude exceeded the blow-up sentinel", t + dt);
    return next;
}

SpectralField step(const SpectralField& theta, const ModelParams& p, double dt, Scheme scheme) {
    return Stepper(theta.grid(), p, dt, scheme).step(theta);
}

// ---------------------------------------------------------------------------

RunResult run(const SpectralField& theta0, const ModelParams& p, const StepperConfig& cfg, const RunOptions& opts) {
    cfg.validate();
    p.validate();
    if (!(opts.norms.sigma > 1.0)) throw ValidationError("ladder exponent sigma must exceed 1");
    const long nsteps = cfg.steps();
    const Stepper stepper(theta0.grid(), p, cfg.dt, cfg.scheme, cfg.dealias);

    RunResult out{{}, {}, theta0, cfl_limit(theta0)};
    const double two_kappa = p.model == Model::dissipative ? 2.0 * p.kappa : 0.0;
    double running = 0.0;
    double e0 = 0.0;

    auto record = [&](const SpectralField& theta, double t) {
        NormRecord rec = measure(theta, t, p, opts.norms);
        if (!out.records.empty()) {
            const NormRecord& prev = out.records.back();
            const double a = prev.hs.at(p.alpha);
            const double b = rec.hs.at(p.alpha);
            running += 0.5 * (t - prev.t) * two_kappa * (a * a + b * b);
        } else {
            e0 = rec.mod_energy;
        }
        rec.diss_integral = running;
        rec.balance_residual = e0 > 0.0 ? (rec.mod_energy + running - e0) / e0 : 0.0;
        out.records.push_back(std::move(rec));
        if (opts.observer) opts.observer(t, theta);
    };

    SpectralField theta = theta0;
    record(theta, 0.0);
    out.trajectory.push_back(Snapshot::from_state(theta, 0.0, p));
    for (long i = 1; i <= nsteps; ++i) {
        const double t_prev = double(i - 1) * cfg.dt;
        theta = stepper.step(theta, t_prev);
        const double t = double(i) * cfg.dt;
        if (i % cfg.diag_every == 0 || i == nsteps) record(theta, t);
        if ((cfg.snapshot_every > 0 && i % cfg.snapshot_every == 0) || i == nsteps)
            out.trajectory.push_back(Snapshot::from_state(theta, t, p));
    }
    out.final_state = std::move(theta);
    return out;
}

// ---------------------------------------------------------------------------

double PicardCertificate::max_ratio() const {
    return ratios.empty() ? 0.0 : *std::max_element(ratios.begin(), ratios.end());
}

std::vector<SpectralField> cumulative_simpson(const std::vector<SpectralField>& f, double h) {
    const std::size_t m = f.size();
    if (m < 3) throw ValidationError("cumulative_simpson needs at least three samples");
    const Grid& g = f.front().grid();
    std::vector<SpectralField> out(m, SpectralField(g));
    // Pairwise Simpson panels give the even nodes exactly as composite Simpson.
    for (std::size_t i = 2; i < m; i += 2) {
        out[i] = out[i - 2];
        out[i].axpy(h / 3.0, f[i - 2]);
        out[i].axpy(4.0 * h / 3.0, f[i - 1]);
        out[i].axpy(h / 3.0, f[i]);
    }
    // Odd nodes: quadratic through (i-1, i, i+1) integrated over [t_{i-1}, t_i],
    // or through (i-2, i-1, i) over [t_{i-1}, t_i] at the right edge.
    for (std::size_t i = 1; i < m; i += 2) {
        out[i] = out[i - 1];
        if (i + 1 < m) {
            out[i].axpy(5.0 * h / 12.0, f[i - 1]);
            out[i].axpy(8.0 * h / 12.0, f[i]);
            out[i].axpy(-h / 12.0, f[i + 1]);
        } else {
            out[i].axpy(-h / 12.0, f[i - 2]);
            out[i].axpy(8.0 * h / 12.0, f[i - 1]);
            out[i].axpy(5.0 * h / 12.0, f[i]);
        }
    }
    return out;
}

namespace {

double sup_distance(const std::vector<SpectralField>& a, const std::vector<SpectralField>& b, double s) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, sobolev_norm(a[i] - b[i], s));
    return d;
}

struct FixedPoint {
    std::vector<SpectralField> states;
    std::vector<double> ratios;
    int iterations = 0;
    bool converged = false;
};

constexpr double kContractionLimit = 0.5 + 0.05;

FixedPoint iterate_map(const SpectralField& theta0, const ModelParams& p, const PicardOptions& opts, double T,
                       int nodes, double R, double t0) {
    const double h = T / (nodes - 1);
    const double floor = 1e-13 * std::max(1.0, R);
    FixedPoint fp;
    fp.states.assign(std::size_t(nodes), theta0);
    double prev = -1.0;
    for (int m = 1; m <= opts.max_iter; ++m) {
        std::vector<SpectralField> rates;
        rates.reserve(fp.states.size());
        for (const auto& st : fp.states) rates.push_back(rhs_regularized(st, p, opts.dealias));
        std::vector<SpectralField> next = cumulative_simpson(rates, h);
        for (auto& st : next) st += theta0;

        const double d = sup_distance(next, fp.states, opts.s);
        if (prev > floor) {
            const double ratio = d / prev;
            fp.ratios.push_back(ratio);
            if (ratio > kContractionLimit)
                throw NoContraction("Picard ratio " + std::to_string(ratio) + " exceeds 1/2 + 0.05 at iteration " +
                                        std::to_string(m),
                                    t0);
        }
        fp.states = std::move(next);
        fp.iterations = m;
        if (d <= opts.tol) {
            fp.converged = true;
            break;
        }
        prev = d;
    }
    return fp;
}

}  // namespace

PicardResult picard_solve(const SpectralField& theta0, const ModelParams& p, const PicardOptions& opts, double horizon,
                          double t0) {
    p.validate();
    if (p.model != Model::regularized) throw ValidationError("picard_solve requires the regularized model");
    if (!(opts.s > 1.0)) throw ValidationError("picard_solve requires s > 1");
    if (opts.nodes < 33 || opts.nodes % 2 == 0) throw ValidationError("Picard quadrature needs an odd node count >= 33");
    if (!(opts.tol > 0.0)) throw ValidationError("Picard tolerance must be positive");

    PicardCertificate cert;
    cert.s = opts.s;
    cert.R = 2.0 * sobolev_norm(theta0, opts.s);
    double T = cert.R > 0.0 ? p.mu / (4.0 * cert.R) : (horizon > 0.0 ? horizon : p.mu);
    if (horizon > 0.0) T = std::min(T, horizon);
    cert.T = T;

    int nodes = opts.nodes;
    FixedPoint fp = iterate_map(theta0, p, opts, T, nodes, cert.R, t0);
    int refinements = 0;
    while (refinements < opts.max_refinements) {
        const int finer = 2 * nodes - 1;
        FixedPoint fine = iterate_map(theta0, p, opts, T, finer, cert.R, t0);
        const double endpoint = sobolev_norm(fine.states.back() - fp.states.back(), opts.s);
        const double coarse_max = fp.ratios.empty() ? 0.0 : *std::max_element(fp.ratios.begin(), fp.ratios.end());
        const double fine_max = fine.ratios.empty() ? 0.0 : *std::max_element(fine.ratios.begin(), fine.ratios.end());
        ++refinements;
        nodes = finer;
        fp = std::move(fine);
        if (endpoint <= std::max(10.0 * opts.tol, 1e-12 * std::max(1.0, cert.R)) && std::abs(fine_max - coarse_max) <= 0.05)
            break;
    }

    cert.iterations = fp.iterations;
    cert.ratios = fp.ratios;
    cert.converged = fp.converged;
    cert.nodes = nodes;
    cert.refinements = refinements;

    PicardResult res;
    res.certificate = std::move(cert);
    res.states = std::move(fp.states);
    res.times.resize(res.states.size());
    const double h = T / (nodes - 1);
    for (int i = 0; i < nodes; ++i) res.times[std::size_t(i)] = i * h;
    return res;
}

ContinuationResult continue_solution(const SpectralField& theta0, const ModelParams& p, const PicardOptions& opts,
                                     double horizon) {
    if (!(horizon > 0.0)) throw ValidationError("continuation horizon must be positive");
    ContinuationResult out;
    out.times.push_back(0.0);
    out.states.push_back(theta0);
    double t = 0.0;
    constexpr long kMaxSegments = 1000000;
    for (long seg = 0; t < horizon * (1.0 - 1e-14); ++seg) {
        if (seg >= kMaxSegments) throw NoContraction("local existence time collapsed", t);
        PicardResult local;
        try {
            local = picard_solve(out.states.back(), p, opts, horizon - t, t);
        } catch (const NoContraction&) {
            throw NoContraction("continuation stopped: no contraction", t);
        }
        if (!local.certificate.converged) throw NoContraction("continuation stopped: Picard iteration did not converge", t);
        t = (horizon - t) - local.certificate.T <= 1e-14 * horizon ? horizon : t + local.certificate.T;
        out.times.push_back(t);
        out.states.push_back(std::move(local.states.back()));
        out.certificates.push_back(std::move(local.certificate));
    }
    out.reached = t;
    return out;
}

}  // namespace qglab
