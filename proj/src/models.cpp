#include "qglab/models.hpp"

#include <cmath>

#include "qglab/errors.hpp"

namespace qglab {

const char* to_string(Model m) noexcept {
    switch (m) {
        case Model::inviscid: return "inviscid";
        case Model::dissipative: return "dissipative";
        case Model::regularized: return "regularized";
    }
    return "?";
}

Model model_from_string(const std::string& s) {
    if (s == "inviscid") return Model::inviscid;
    if (s == "dissipative") return Model::dissipative;
    if (s == "regularized") return Model::regularized;
    throw ValidationError("unknown model '" + s + "' (expected inviscid, dissipative or regularized)");
}

void ModelParams::validate() const {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw ValidationError("alpha must lie in [0, 1]");
    switch (model) {
        case Model::inviscid:
            if (kappa != 0.0 || mu != 0.0) throw ValidationError("inviscid model requires kappa = mu = 0");
            break;
        case Model::dissipative:
            if (!(kappa > 0.0)) throw ValidationError("dissipative model requires kappa > 0");
            if (mu != 0.0) throw ValidationError("dissipative model requires mu = 0");
            break;
        case Model::regularized:
            if (alpha < 0.5) throw ValidationError("regularized model requires alpha >= 1/2");
            if (!(mu > 0.0)) throw ValidationError("regularized model requires mu > 0");
            if (kappa != 0.0) throw ValidationError("regularized model requires kappa = 0");
            break;
    }
    if (forcing && model != Model::dissipative) throw ValidationError("forcing is only supported for the dissipative model");
    if (forcing && !forcing->all_finite()) throw ValidationError("forcing has non-finite coefficients");
}

ModelParams ModelParams::inviscid() { return ModelParams{}; }

ModelParams ModelParams::dissipative(double kappa, double alpha) {
    ModelParams p;
    p.model = Model::dissipative;
    p.kappa = kappa;
    p.alpha = alpha;
    return p;
}

ModelParams ModelParams::regularized(double mu, double alpha) {
    ModelParams p;
    p.model = Model::regularized;
    p.mu = mu;
    p.alpha = alpha;
    return p;
}

SpectralField nonlinear_term(const SpectralField& theta, bool dealiased) {
    const Grid& g = theta.grid();
    const Velocity vel = riesz_velocity(theta);
    const PhysicalField th = inverse_transform(theta);
    const SpectralField flux1 = forward_transform(multiply(inverse_transform(vel.u1), th));
    const SpectralField flux2 = forward_transform(multiply(inverse_transform(vel.u2), th));

    const int n = g.n();
    SpectralField out(g);
    auto o = out.data();
    auto f1 = flux1.data();
    auto f2 = flux2.data();
    std::size_t idx = 0;
    for (int r = 0; r < n; ++r) {
        const int k2 = g.wavenumber(r);
        for (int k1 = 0; k1 <= n / 2; ++k1, ++idx) {
            if (std::abs(k1) == n / 2 || std::abs(k2) == n / 2) continue;
            if (dealiased && !is_dealiased(n, k1, k2)) continue;
            o[idx] = Complex(0.0, 1.0) * (double(k1) * f1[idx] + double(k2) * f2[idx]);
        }
    }
    o[0] = 0.0;
    return out;
}

SpectralField rhs_inviscid(const SpectralField& theta, bool dealiased) {
    SpectralField out = nonlinear_term(theta, dealiased);
    out *= -1.0;
    return out;
}

double dissipation_symbol(int k1, int k2, double kappa, double alpha) {
    if (k1 == 0 && k2 == 0) return 0.0;
    const double k2mag = double(k1) * k1 + double(k2) * k2;
    return kappa * std::pow(k2mag, alpha);
}

double regularization_symbol(int k1, int k2, double mu, double alpha) {
    if (k1 == 0 && k2 == 0) return 1.0;
    const double k2mag = double(k1) * k1 + double(k2) * k2;
    return 1.0 / (1.0 + mu * std::pow(k2mag, alpha));
}

SpectralField rhs_dissipative(const SpectralField& theta, const ModelParams& p, bool dealiased) {
    if (p.model != Model::dissipative) throw ValidationError("rhs_dissipative called with a non-dissipative model");
    SpectralField out = rhs_inviscid(theta, dealiased);
    auto o = out.data();
    auto th = theta.data();
    const int n = theta.n();
    std::size_t idx = 0;
    for (int r = 0; r < n; ++r) {
        const int k2 = theta.grid().wavenumber(r);
        for (int k1 = 0; k1 <= n / 2; ++k1, ++idx) o[idx] -= dissipation_symbol(k1, k2, p.kappa, p.alpha) * th[idx];
    }
    if (p.forcing) out += *p.forcing;
    return out;
}

SpectralField rhs_regularized(const SpectralField& theta, const ModelParams& p, bool dealiased) {
    if (p.model != Model::regularized) throw ValidationError("rhs_regularized called with a non-regularized model");
    SpectralField out = rhs_inviscid(theta, dealiased);
    out.for_each_mode([&p](int k1, int k2, Complex& c) { c *= regularization_symbol(k1, k2, p.mu, p.alpha); });
    return out;
}

SpectralField rhs(const SpectralField& theta, const ModelParams& p, bool dealiased) {
    switch (p.model) {
        case Model::inviscid: return rhs_inviscid(theta, dealiased);
        case Model::dissipative: return rhs_dissipative(theta, p, dealiased);
        case Model::regularized: return rhs_regularized(theta, p, dealiased);
    }
    throw ValidationError("unknown model");
}

std::array<Complex, 2> kernel_g(int k1, int k2, double mu, double alpha) {
    if (k1 == 0 && k2 == 0) return {Complex{}, Complex{}};
    const double d = 1.0 + mu * std::pow(double(k1) * k1 + double(k2) * k2, alpha);
    return {Complex(0.0, k1 / d), Complex(0.0, k2 / d)};
}

double kernel_g_sup(int n, double mu, double alpha) {
    double sup = 0.0;
    for (int k2 = -n / 2 + 1; k2 <= n / 2; ++k2)
        for (int k1 = -n / 2 + 1; k1 <= n / 2; ++k1) {
            const auto g = kernel_g(k1, k2, mu, alpha);
            sup = std::max(sup, std::sqrt(std::norm(g[0]) + std::norm(g[1])));
        }
    return sup;
}

}  // namespace qglab
