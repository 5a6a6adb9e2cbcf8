#pragma once

// Norms, conservation residuals, maximum-principle checks, critical-case
// monitors, the Duchon-Robert flux and the interpolation-inequality checks.
//
// All norms are physical integrals over [0, 2pi]^2:
//   |f|_q     = (int |f|^q dx)^{1/q}, node quadrature (exact for trig polynomials)
//   ||f||_s   = |Lambda^s f|_2 = 2 pi sqrt(sum_k |k|^{2s} |f_hat(k)|^2)

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <vector>

#include "qglab/models.hpp"
#include "qglab/spectral.hpp"

namespace qglab {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// q in [1, inf]; q = inf is the largest node magnitude.
double lp_norm(const PhysicalField& f, double q);

/// L^q norm of the Euclidean magnitude of a vector field.
double lp_norm(const PhysicalField& f1, const PhysicalField& f2, double q);

/// |Lambda^s f|_2. s < 0 requires a zero-mean field.
double sobolev_norm(const SpectralField& f, double s);

/// Littlewood-Paley block: modes with 2^j <= |k| < 2^{j+1}.
SpectralField dyadic_shell(const SpectralField& f, int j);

/// sup_j 2^{js} |Delta_j f|_3 with sharp dyadic shells. Zero-mean f.
double besov_norm(const SpectralField& f, double s);

struct LpNorms {
    double l2 = 0, l3 = 0, l4 = 0, linf = 0;
};

struct NormRecord {
    double t = 0;
    LpNorms lp;
    std::map<double, double> hs;            // s -> ||theta||_s
    double s_index = 2;                     // index reported as the `hs` column
    std::optional<std::pair<double, double>> besov;  // (s, value)
    double energy = 0;         // |theta|_2^2
    double mod_energy = 0;     // |theta|_2^2 + mu ||theta||_alpha^2
    double diss_integral = 0;  // 2 kappa int_0^t ||theta||_alpha^2
    double balance_residual = 0;  // (mod_energy + diss_integral - mod_energy(0)) / mod_energy(0)
    double u_inf = 0;          // |u|_inf
    double q_inf = 0;          // |theta|_inf + |u|_inf
    double ladder = 0;         // 1 + ||theta||_1 sqrt(log(1 + ||theta||_sigma^{1/(sigma-1)}))
};

struct NormOptions {
    double s = 2.0;        // Sobolev index reported in the `hs` CSV column
    double sigma = 2.0;    // ladder exponent, > 1
    std::vector<double> extra_sobolev;  // additional indices recorded in NormRecord::hs
    std::optional<double> besov_s;      // record a Besov estimate at this index
};

/// Instantaneous record; running quantities (diss_integral, balance_residual) are left at 0.
NormRecord measure(const SpectralField& theta, double t, const ModelParams& p, const NormOptions& opts);

/// 1 + ||theta||_1 sqrt(log(1 + ||theta||_sigma^{1/(sigma-1)})).
double ladder_bracket(const SpectralField& theta, double sigma);

struct MaxPrincipleReport {
    double q = 2;
    double worst_margin = 0;  // max_t |theta(t)|_q - bound(t); negative means strict
    double worst_time = 0;
    double slack = 0;
};

/// Checks |theta(t)|_q <= |theta_0|_q + t |f|_q + slack, slack = slack_rel * |theta_0|_q.
/// q must be 2, 3, 4 or inf (the recorded norms). Throws Violation at the first failing time.
MaxPrincipleReport max_principle_check(const std::vector<NormRecord>& series, double q,
                                       double forcing_lq = 0.0, double slack_rel = 1e-3);

/// max_t | |theta(t)|_2^2 + 2 kappa int_0^t ||theta||_alpha^2 - |theta_0|_2^2 | / |theta_0|_2^2,
/// integral by trapezoid over the samples. Records must carry hs[alpha].
double energy_balance_residual(const std::vector<NormRecord>& series, double kappa, double alpha);

struct MonitorConstants {
    double c0 = 1.0;     // small-data constant: flag Q < kappa / c0
    double c = 1.0;      // ladder constant: flag L <= c kappa
    double sigma = 2.0;
};

struct CriticalMonitor {
    double q_inf = 0;
    double ladder = 0;
    bool small_data = false;
    bool ladder_ok = false;
};

CriticalMonitor critical_monitor(const SpectralField& theta, const ModelParams& p, const MonitorConstants& c);

/// |F|_inf / (1 + ||F||_1 sqrt(log(1 + ||F||_sigma^{1/(sigma-1)}))) for one field.
double log_bound_ratio(const SpectralField& f, double sigma);

struct LogBoundResult {
    double max_ratio = 0;
    double mean_ratio = 0;
    int trials = 0;
    int grid_n = 0;
};

/// Samples `trials` zero-mean fields band-limited to |k| <= mode_cap with random phases
/// and magnitudes |k|^-gamma, gamma ~ U[1, 3]; returns the largest ratio (empirical constant).
LogBoundResult log_bound_check(int trials, double sigma, int mode_cap, std::uint64_t seed);

/// |Lambda^{s+beta} f|_2 - |Lambda^{s+alpha} f|_2^{beta/alpha} |Lambda^s f|_2^{1-beta/alpha}; <= 0 up to round-off.
double gn_check(const SpectralField& f, double s, double alpha, double beta);

struct GnSweepResult {
    double max_relative_residual = 0;  // max (lhs - rhs) / rhs
    int trials = 0;
};

GnSweepResult gn_sweep(int trials, double s, double alpha, double beta, std::uint64_t seed, int n = 64);

enum class ConvexTag { half_square, sqrt1p };

const char* to_string(ConvexTag g) noexcept;
ConvexTag convex_from_string(const std::string& s);

struct ConvexG {
    ConvexTag tag = ConvexTag::half_square;
    double value(double x) const noexcept;
    double d1(double x) const noexcept;
    double d2(double x) const noexcept;
};

struct FluxEstimate {
    double eps = 0;
    MollifierProfile profile = MollifierProfile::gaussian;
    double sigma_l1 = 0;       // |sigma^eps|_1
    double r_l32 = 0;          // |r^eps|_{3/2}, NaN unless the decomposition was evaluated
    double flux_integral = 0;  // int sigma^eps . grad theta^eps dx
    double dr_integral = 0;    // int G''(theta^eps) grad theta^eps . ((u theta)^eps - u^eps theta^eps) dx
    double decomposition_defect = std::numeric_limits<double>::quiet_NaN();
    std::optional<PhysicalField> dr_field;
};

struct FluxOptions {
    MollifierProfile profile = MollifierProfile::gaussian;
    bool decomposition = true;  // evaluate r^eps by stencil quadrature
    bool keep_field = false;
    int stencil = 21;           // offsets per direction on [-3 eps, 3 eps]
};

/// sigma^eps = u^eps theta^eps - (u theta)^eps, the flux appearing in the mollified equation
/// d_t theta^eps + u^eps . grad theta^eps = div sigma^eps. With the decomposition enabled,
/// sigma^eps is recomputed as (u - u^eps)(theta - theta^eps) - r^eps(u, theta) and the relative
/// L^1 mismatch is reported.
FluxEstimate dr_flux(const SpectralField& theta, double eps, const ConvexG& g, const FluxOptions& opts = {});

}  // namespace qglab
