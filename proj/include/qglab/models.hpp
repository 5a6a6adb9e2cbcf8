#pragma once

// Right-hand sides of the three active-scalar models on the torus
//
//   inviscid      theta_t + u.grad theta = 0
//   dissipative   theta_t + u.grad theta + kappa Lambda^{2 alpha} theta = f
//   regularized   theta_t + u.grad theta + mu Lambda^{2 alpha} theta_t = 0
//
// with u = (-R2 theta, R1 theta). The advection term is evaluated in
// divergence form, div(u theta), pseudo-spectrally with 2/3-rule dealiasing.

#include <array>
#include <optional>
#include <string>

#include "qglab/spectral.hpp"

namespace qglab {

enum class Model { inviscid = 0, dissipative = 1, regularized = 2 };

const char* to_string(Model m) noexcept;
Model model_from_string(const std::string& s);

struct ModelParams {
    Model model = Model::inviscid;
    double alpha = 0.5;
    double kappa = 0.0;
    double mu = 0.0;
    std::optional<SpectralField> forcing;  // dissipative only

    /// Throws ValidationError naming the first broken invariant.
    void validate() const;

    static ModelParams inviscid();
    static ModelParams dissipative(double kappa, double alpha);
    static ModelParams regularized(double mu, double alpha);
};

/// Spectral coefficients of div(u theta), u = riesz_velocity(theta). The
/// product is formed on the n x n nodes; the result is dealiased unless
/// `dealiased` is false. The k = 0 coefficient is exactly zero.
SpectralField nonlinear_term(const SpectralField& theta, bool dealiased = true);

SpectralField rhs_inviscid(const SpectralField& theta, bool dealiased = true);

/// -div(u theta) - kappa Lambda^{2 alpha} theta + f
SpectralField rhs_dissipative(const SpectralField& theta, const ModelParams& p, bool dealiased = true);

/// -(1 + mu Lambda^{2 alpha})^{-1} div(u theta)
SpectralField rhs_regularized(const SpectralField& theta, const ModelParams& p, bool dealiased = true);

/// Dispatches on p.model.
SpectralField rhs(const SpectralField& theta, const ModelParams& p, bool dealiased = true);

/// Fourier symbol of the kernel G: i (k1, k2) / (1 + mu |k|^{2 alpha}); zero at k = 0.
std::array<Complex, 2> kernel_g(int k1, int k2, double mu, double alpha);

/// sup_k |G_hat(k)| over the wavenumbers of an n x n grid.
double kernel_g_sup(int n, double mu, double alpha);

/// Symbol of the linear dissipation, kappa |k|^{2 alpha}; zero at k = 0 (including alpha = 0).
double dissipation_symbol(int k1, int k2, double kappa, double alpha);

/// 1 / (1 + mu |k|^{2 alpha}).
double regularization_symbol(int k1, int k2, double mu, double alpha);

}  // namespace qglab
