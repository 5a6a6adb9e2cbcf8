#include "qglab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fft_plan.hpp"
#include "qglab/errors.hpp"

namespace qglab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_same_grid(const SpectralField& a, const SpectralField& b) {
    if (!(a.grid() == b.grid())) throw ValidationError("spectral fields live on different grids");
}

bool on_nyquist_line(int n, int k1, int k2) noexcept {
    return std::abs(k1) == n / 2 || std::abs(k2) == n / 2;
}

}  // namespace

// ---------------------------------------------------------------------------
// Grid / fields

Grid::Grid(int n) : n_(n) {
    if (n < 8 || n % 2 != 0) throw ValidationError("grid size n must be even and >= 8, got " + std::to_string(n));
    plan_ = FftPlan::for_size(n);
}

double Grid::node(int index) const noexcept { return kTwoPi * index / n_; }

double Grid::cell_area() const noexcept {
    const double h = kTwoPi / n_;
    return h * h;
}

PhysicalField::PhysicalField(const Grid& grid) : grid_(grid), values_(grid.physical_size(), 0.0) {}

PhysicalField::PhysicalField(const Grid& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.physical_size())
        throw ValidationError("physical field has " + std::to_string(values_.size()) + " values, expected " +
                              std::to_string(grid_.physical_size()));
}

PhysicalField PhysicalField::from_function(const Grid& grid, const std::function<double(double, double)>& f) {
    PhysicalField p(grid);
    for (int j = 0; j < grid.n(); ++j)
        for (int i = 0; i < grid.n(); ++i) p(i, j) = f(grid.node(i), grid.node(j));
    return p;
}

bool PhysicalField::all_finite() const noexcept {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

SpectralField::SpectralField(const Grid& grid) : grid_(grid), coeffs_(grid.spectral_size(), Complex{}) {}

Complex SpectralField::coeff(int k1, int k2) const noexcept {
    if (k1 >= 0) return at(k1, k2);
    return std::conj(at(-k1, -k2));
}

double SpectralField::max_abs() const noexcept {
    double m = 0.0;
    for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

bool SpectralField::all_finite() const noexcept {
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](const Complex& c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); });
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
    require_same_grid(*this, o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
    require_same_grid(*this, o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
}

SpectralField& SpectralField::operator*=(double a) {
    for (auto& c : coeffs_) c *= a;
    return *this;
}

SpectralField& SpectralField::axpy(double a, const SpectralField& o) {
    require_same_grid(*this, o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += a * o.coeffs_[i];
    return *this;
}

void enforce_hermitian(SpectralField& f) {
    const int n = f.n();
    for (int k1 : {0, n / 2}) {
        for (int k2 = 0; k2 <= n / 2; ++k2) {
            if (k2 == 0 || k2 == n / 2) {
                f.at(k1, k2) = Complex(f.at(k1, k2).real(), 0.0);
            } else {
                f.at(k1, -k2) = std::conj(f.at(k1, k2));
            }
        }
    }
}

double hermitian_defect(const SpectralField& f) {
    const int n = f.n();
    double worst = 0.0;
    for (int k1 : {0, n / 2})
        for (int k2 = 0; k2 < n; ++k2)
            worst = std::max(worst, std::abs(f.at(k1, k2) - std::conj(f.at(k1, -k2))));
    return worst;
}

// ---------------------------------------------------------------------------
// Transforms

SpectralField forward_transform(const PhysicalField& p) {
    const Grid& g = p.grid();
    std::vector<double> work(p.values().begin(), p.values().end());
    SpectralField out(g);
    g.plan().forward(work.data(), reinterpret_cast<fftw_complex*>(out.data().data()));
    out *= 1.0 / double(g.physical_size());
    return out;
}

PhysicalField inverse_transform(const SpectralField& f) {
    const Grid& g = f.grid();
    std::vector<Complex> work(f.data().begin(), f.data().end());
    std::vector<double> values(g.physical_size());
    g.plan().inverse(reinterpret_cast<fftw_complex*>(work.data()), values.data());
    return PhysicalField(g, std::move(values));
}

// ---------------------------------------------------------------------------
// Multipliers

SpectralField apply_lambda(const SpectralField& f, double beta) {
    if (beta == 0.0) return f;
    if (beta < 0.0 && f.mean() != Complex{}) throw NegativePowerOnMean();
    SpectralField out = f;
    out.for_each_mode([beta](int k1, int k2, Complex& c) {
        if (k1 == 0 && k2 == 0) {
            c = 0.0;
            return;
        }
        c *= std::pow(std::hypot(double(k1), double(k2)), beta);
    });
    return out;
}

Velocity riesz_velocity(const SpectralField& theta) {
    const int n = theta.n();
    Velocity v{SpectralField(theta.grid()), SpectralField(theta.grid())};
    const auto src = theta.data();
    auto d1 = v.u1.data();
    auto d2 = v.u2.data();
    std::size_t idx = 0;
    for (int r = 0; r < n; ++r) {
        const int k2 = theta.grid().wavenumber(r);
        for (int k1 = 0; k1 <= n / 2; ++k1, ++idx) {
            if ((k1 == 0 && k2 == 0) || on_nyquist_line(n, k1, k2)) continue;
            const double inv = 1.0 / std::hypot(double(k1), double(k2));
            const Complex ic = Complex(0.0, 1.0) * src[idx];
            d1[idx] = (k2 * inv) * ic;
            d2[idx] = (-k1 * inv) * ic;
        }
    }
    return v;
}

SpectralField riesz_transform(const SpectralField& f, int component) {
    if (component != 1 && component != 2) throw ValidationError("Riesz component must be 1 or 2");
    const int n = f.n();
    SpectralField out = f;
    out.for_each_mode([&](int k1, int k2, Complex& c) {
        if ((k1 == 0 && k2 == 0) || on_nyquist_line(n, k1, k2)) {
            c = 0.0;
            return;
        }
        const double kj = component == 1 ? k1 : k2;
        c *= Complex(0.0, -kj / std::hypot(double(k1), double(k2)));
    });
    return out;
}

SpectralField derivative(const SpectralField& f, int component) {
    if (component != 1 && component != 2) throw ValidationError("derivative component must be 1 or 2");
    const int n = f.n();
    SpectralField out = f;
    out.for_each_mode([&](int k1, int k2, Complex& c) {
        if (on_nyquist_line(n, k1, k2)) {
            c = 0.0;
            return;
        }
        c *= Complex(0.0, component == 1 ? k1 : k2);
    });
    return out;
}

bool is_dealiased(int n, int k1, int k2) noexcept { return 3 * std::max(std::abs(k1), std::abs(k2)) <= n; }

void dealias_in_place(SpectralField& f) {
    const int n = f.n();
    f.for_each_mode([n](int k1, int k2, Complex& c) {
        if (!is_dealiased(n, k1, k2)) c = 0.0;
    });
}

SpectralField dealias(const SpectralField& f) {
    SpectralField out = f;
    dealias_in_place(out);
    return out;
}

// ---------------------------------------------------------------------------
// Mollifiers

const char* to_string(MollifierProfile p) noexcept {
    return p == MollifierProfile::gaussian ? "gaussian" : "raised-cosine";
}

MollifierProfile mollifier_profile_from_string(const std::string& s) {
    if (s == "gaussian") return MollifierProfile::gaussian;
    if (s == "raised-cosine" || s == "raised_cosine") return MollifierProfile::raised_cosine;
    throw ValidationError("unknown mollifier profile '" + s + "' (expected gaussian or raised-cosine)");
}

double Mollifier::symbol(double kmag) const noexcept {
    const double r = eps * kmag;
    switch (profile) {
        case MollifierProfile::gaussian:
            return std::exp(-0.5 * r * r);
        case MollifierProfile::raised_cosine:
            return r < std::numbers::pi ? 0.5 * (1.0 + std::cos(r)) : 0.0;
    }
    return 0.0;
}

double Mollifier::kernel(double r) const {
    switch (profile) {
        case MollifierProfile::gaussian:
            return std::exp(-0.5 * r * r) / kTwoPi;
        case MollifierProfile::raised_cosine: {
            // phi(r) = (2 pi)^-1 int_0^pi m(rho) J0(rho r) rho drho, composite Simpson.
            constexpr int intervals = 512;
            const double h = std::numbers::pi / intervals;
            double sum = 0.0;
            for (int i = 0; i <= intervals; ++i) {
                const double rho = i * h;
                const double w = (i == 0 || i == intervals) ? 1.0 : (i % 2 ? 4.0 : 2.0);
                sum += w * 0.5 * (1.0 + std::cos(rho)) * std::cyl_bessel_j(0.0, rho * r) * rho;
            }
            return sum * h / 3.0 / kTwoPi;
        }
    }
    return 0.0;
}

SpectralField mollify(const SpectralField& f, const Mollifier& m) {
    if (!(m.eps > 0.0)) throw ValidationError("mollifier scale eps must be positive");
    SpectralField out = f;
    out.for_each_mode([&m](int k1, int k2, Complex& c) {
        if (k1 == 0 && k2 == 0) return;
        c *= m.symbol(std::hypot(double(k1), double(k2)));
    });
    return out;
}

SpectralField translate(const SpectralField& f, double shift1, double shift2) {
    const int n = f.n();
    SpectralField out = f;
    out.for_each_mode([&](int k1, int k2, Complex& c) {
        const double phase = -(k1 * shift1 + k2 * shift2);
        // Self-conjugate Nyquist modes only admit the real (cosine) part of the shift.
        if (on_nyquist_line(n, k1, k2))
            c *= std::cos(phase);
        else
            c *= Complex(std::cos(phase), std::sin(phase));
    });
    return out;
}

double spectral_energy(const SpectralField& f, double s) {
    double sum = 0.0;
    f.for_each_mode([&](int k1, int k2, const Complex& c) {
        const double a2 = std::norm(c);
        if (k1 == 0 && k2 == 0) {
            if (s == 0.0) sum += a2;
            return;
        }
        const double k2mag = double(k1) * k1 + double(k2) * k2;
        const double mult = s == 0.0 ? 1.0 : std::pow(k2mag, s);
        sum += f.weight(k1) * mult * a2;
    });
    return kTwoPi * kTwoPi * sum;
}

PhysicalField multiply(const PhysicalField& a, const PhysicalField& b) {
    PhysicalField out(a.grid());
    auto o = out.values();
    auto x = a.values();
    auto y = b.values();
    for (std::size_t i = 0; i < o.size(); ++i) o[i] = x[i] * y[i];
    return out;
}

}  // namespace qglab
