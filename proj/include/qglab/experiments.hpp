#pragma once

// Multi-run studies: the mu -> 0 convergence sweep, blow-up criterion
// monitoring for the regularized model, and Duchon-Robert flux scaling.

#include <vector>

#include "qglab/diagnostics.hpp"
#include "qglab/timestepper.hpp"

namespace qglab {

/// Least-squares slope of log y against log x, skipping pairs with y <= floor.
/// Returns NaN when fewer than two pairs survive.
double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y, double floor = 1e-13);

struct MuSweepConfig {
    double dt = 1e-3;
    double t_end = 1.0;
    int diag_every = 10;
    bool dealias = true;
    double reference_fraction = 0.1;  // reference self-error must stay below this share of the smallest error
};

struct MuSweepResult {
    std::vector<double> mu_list;
    std::vector<double> l2_errors;      // sup_t |theta^mu - theta|_2
    std::vector<double> energy_errors;  // sup_t (|w|_2^2 + mu ||w||_alpha^2), w = theta^mu - theta
    double slope_l2 = 0;
    double slope_energy = 0;
    double reference_self_error = 0;    // sup_t |theta_dt - theta_{dt/2}|_2 of the inviscid reference
    double reference_dt = 0;
    double data_discrepancy = 0;        // |theta_0^mu - theta_0|_2^2 + mu ||.||_alpha^2, zero here
    bool monotone = true;               // errors shrink with mu
};

/// Runs the regularized model for every mu (strictly decreasing) from the same theta0 and compares
/// against the inviscid reference integrated at dt/2. Throws ReferenceTooCoarse when the
/// reference self-convergence error exceeds reference_fraction of the smallest nonzero mu-error.
MuSweepResult compare_mu(const SpectralField& theta0, double alpha, const std::vector<double>& mu_list,
                         const MuSweepConfig& cfg);

struct BlowupWatch {
    std::vector<double> times;
    std::vector<double> theta_inf_integral;  // int_0^t |theta|_inf
    std::vector<double> u_inf_integral;      // int_0^t |u|_inf
    std::vector<double> h1;                  // ||theta||_1
    std::vector<double> hs;                  // ||theta||_s
    std::vector<bool> extension_guaranteed;  // both integrals below M
    double envelope_rate = 0;   // max_t log(z(t)/z(0)) / t, z = ||theta||_{s-1/2}^2 + mu ||theta||_s^2
    double z_ode_constant = 0;  // max over sample pairs of z' / (z sqrt(1 + log z))
};

/// Accumulates the blow-up criterion integrals over a regularized run's records (trapezoid rule).
/// Records must carry hs at s and s - 1/2 (see NormOptions::extra_sobolev).
BlowupWatch blowup_watch(const std::vector<NormRecord>& records, double s, double mu, double m_threshold);

struct FluxScaling {
    std::vector<double> eps;
    std::vector<double> flux;  // |flux_integral|
    double exponent = 0;
};

/// dr_flux at each eps and the fitted decay exponent of |flux_integral|.
/// Throws DegenerateFit when fewer than two values exceed 1e-14.
FluxScaling flux_scaling(const SpectralField& theta, const std::vector<double>& eps_list, const ConvexG& g,
                         MollifierProfile profile = MollifierProfile::gaussian);

/// Zero-mean synthetic field with |theta_hat(k)| = |k|^{-(s+1)}, random phases, 1 <= |k| <= kmax.
SpectralField synthetic_besov_field(const Grid& grid, double s, double kmax, std::uint64_t seed);

}  // namespace qglab
