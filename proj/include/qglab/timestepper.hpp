#pragma once

// Time integration of the three models and the contraction-mapping local
// solver for the regularized model.

#include <functional>
#include <string>
#include <vector>

#include "qglab/diagnostics.hpp"
#include "qglab/models.hpp"
#include "qglab/snapshot.hpp"
#include "qglab/spectral.hpp"

namespace qglab {

enum class Scheme { etd_rk4, rk4 };

const char* to_string(Scheme s) noexcept;
Scheme scheme_from_string(const std::string& s);

/// Coefficient magnitude beyond which a step is declared unstable.
inline constexpr double kBlowupSentinel = 1e12;

struct StepperConfig {
    double dt = 1e-3;
    double t_end = 1.0;
    Scheme scheme = Scheme::etd_rk4;
    int diag_every = 1;
    int snapshot_every = 0;  // 0: keep only the initial and final states
    bool dealias = true;

    void validate() const;
    /// Number of steps; t_end must be an integer multiple of dt.
    long steps() const;
};

/// Advective CFL estimate dt <= c / (|u|_inf k_max); advisory only.
double cfl_limit(const SpectralField& theta, double courant = 0.5);

/// Single-step integrator with cached linear factors.
///
/// etd-rk4 is the integrating-factor (Lawson) RK4: the dissipation
/// kappa Lambda^{2 alpha} is integrated exactly through exp(-kappa |k|^{2 alpha} dt)
/// and RK4 acts on the remaining terms. For the inviscid and regularized models
/// the linear part is zero and both schemes coincide with classical RK4.
class Stepper {
public:
    Stepper(const Grid& grid, ModelParams params, double dt, Scheme scheme, bool dealias = true);

    /// Throws UnstableStep (time t + dt) if a coefficient exceeds kBlowupSentinel or is not finite.
    SpectralField step(const SpectralField& theta, double t = 0.0) const;

    /// Right-hand side without the exactly integrated linear part.
    SpectralField nonlinear_rhs(const SpectralField& theta) const;

    const ModelParams& params() const noexcept { return params_; }
    double dt() const noexcept { return dt_; }

private:
    void scale(SpectralField& f, const std::vector<double>& factor) const;

    Grid grid_;
    ModelParams params_;
    double dt_;
    Scheme scheme_;
    bool dealias_;
    bool split_linear_;
    std::vector<double> full_;  // exp(-L dt)
    std::vector<double> half_;  // exp(-L dt / 2)
};

SpectralField step(const SpectralField& theta, const ModelParams& p, double dt, Scheme scheme = Scheme::etd_rk4);

struct RunOptions {
    NormOptions norms;
    /// Called at every diagnostic sample with the current state.
    std::function<void(double, const SpectralField&)> observer;
};

struct RunResult {
    std::vector<Snapshot> trajectory;
    std::vector<NormRecord> records;
    SpectralField final_state;
    double cfl_estimate = 0;  // advisory dt bound at t = 0
};

/// Integrates to cfg.t_end recording a NormRecord at t = 0, every diag_every steps
/// and at the final step. Running integrals (diss_integral) use the trapezoid rule
/// over the recorded samples. Deterministic for fixed inputs.
RunResult run(const SpectralField& theta0, const ModelParams& p, const StepperConfig& cfg,
              const RunOptions& opts = {});

struct PicardOptions {
    double s = 2.0;       // Sobolev index of the contraction norm, > 1
    double tol = 1e-10;   // stop when sup_t ||theta^{m+1} - theta^m||_s <= tol
    int max_iter = 50;
    int nodes = 33;       // Simpson nodes on [0, T] (odd, >= 33)
    int max_refinements = 3;
    bool dealias = true;
};

struct PicardCertificate {
    double R = 0;  // 2 ||theta_0||_s
    double T = 0;  // mu / (4 R), possibly clipped to a requested horizon
    int iterations = 0;
    std::vector<double> ratios;  // successive sup-norm increment ratios
    bool converged = false;
    double s = 0;
    int nodes = 0;          // quadrature nodes of the accepted solve
    int refinements = 0;    // node doublings performed
    double max_ratio() const;
};

struct PicardResult {
    std::vector<double> times;
    std::vector<SpectralField> states;
    PicardCertificate certificate;
};

/// Fixed-point iteration theta^{m+1}(t) = theta_0 - int_0^t (1 + mu Lambda^{2 alpha})^{-1} div(u theta^m) dtau
/// on [0, T], T = mu / (4 R), R = 2 ||theta_0||_s, with cumulative Simpson quadrature.
/// Node counts double until the endpoint and the largest ratio stabilize.
/// Throws NoContraction (time t0) when a ratio exceeds 1/2 + 0.05.
/// `horizon` > 0 clips T.
PicardResult picard_solve(const SpectralField& theta0, const ModelParams& p, const PicardOptions& opts,
                          double horizon = 0.0, double t0 = 0.0);

struct ContinuationResult {
    std::vector<double> times;             // segment endpoints, starting at 0
    std::vector<SpectralField> states;     // state at each endpoint
    std::vector<PicardCertificate> certificates;
    double reached = 0;
};

/// Chains picard_solve segments, re-seeding from each endpoint, until `horizon`.
/// NoContraction propagates carrying the time reached.
ContinuationResult continue_solution(const SpectralField& theta0, const ModelParams& p, const PicardOptions& opts,
                                     double horizon);

/// Cumulative integral of samples on a uniform grid: out[i] ~ int_{t_0}^{t_i}.
/// Matches composite Simpson at even nodes; odd nodes use the three-point
/// quadratic rule on the first or last subinterval pair.
std::vector<SpectralField> cumulative_simpson(const std::vector<SpectralField>& values, double h);

}  // namespace qglab
