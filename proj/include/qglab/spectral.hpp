#pragma once

// Fourier grid on the periodic box [0, 2pi]^2 and the diagonal multiplier
// algebra built on it (fractional Laplacian, Riesz transforms, 2/3-rule
// dealiasing, spectral mollification).
//
// Conventions
//   physical node (i, j) sits at x = (2 pi i / n, 2 pi j / n); values are
//   stored row-major with j (the x2 index) slow.
//   f_hat(k) = n^-2 sum_x f(x) exp(-i k.x), so f_hat(0) is the mean of f.
//   Norms use the physical integral:  |f|_2^2 = (2 pi)^2 sum_k |f_hat(k)|^2.
//
// Spectral coefficients are kept in the real-to-complex half layout:
// k1 in [0, n/2] (fast), k2 in {0..n/2, -n/2+1..-1} (slow). Modes with k1 < 0
// are implied by Hermitian symmetry.

#include <complex>
#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace qglab {

using Complex = std::complex<double>;

class FftPlan;

class Grid {
public:
    /// n must be even and >= 8; throws ValidationError otherwise.
    explicit Grid(int n);

    int n() const noexcept { return n_; }
    int half() const noexcept { return n_ / 2 + 1; }
    std::size_t physical_size() const noexcept { return std::size_t(n_) * n_; }
    std::size_t spectral_size() const noexcept { return std::size_t(n_) * half(); }

    /// Signed wavenumber carried by storage row r (k2) or by a full-length index.
    int wavenumber(int index) const noexcept { return index <= n_ / 2 ? index : index - n_; }
    int row_of(int k2) const noexcept { return ((k2 % n_) + n_) % n_; }

    double node(int index) const noexcept;
    /// Area element of the node quadrature, (2 pi / n)^2.
    double cell_area() const noexcept;

    const FftPlan& plan() const { return *plan_; }

    friend bool operator==(const Grid& a, const Grid& b) noexcept { return a.n_ == b.n_; }

private:
    int n_;
    std::shared_ptr<const FftPlan> plan_;
};

class PhysicalField {
public:
    explicit PhysicalField(const Grid& grid);
    PhysicalField(const Grid& grid, std::vector<double> values);
    /// Samples f(x1, x2) at the nodes.
    static PhysicalField from_function(const Grid& grid,
                                       const std::function<double(double, double)>& f);

    const Grid& grid() const noexcept { return grid_; }
    int n() const noexcept { return grid_.n(); }

    double& operator()(int i, int j) noexcept { return values_[std::size_t(j) * grid_.n() + i]; }
    double operator()(int i, int j) const noexcept { return values_[std::size_t(j) * grid_.n() + i]; }

    std::span<double> values() noexcept { return values_; }
    std::span<const double> values() const noexcept { return values_; }

    bool all_finite() const noexcept;

private:
    Grid grid_;
    std::vector<double> values_;
};

class SpectralField {
public:
    explicit SpectralField(const Grid& grid);

    const Grid& grid() const noexcept { return grid_; }
    int n() const noexcept { return grid_.n(); }

    /// Stored coefficient; 0 <= k1 <= n/2, any k2 (taken mod n).
    Complex& at(int k1, int k2) noexcept { return coeffs_[index(k1, k2)]; }
    const Complex& at(int k1, int k2) const noexcept { return coeffs_[index(k1, k2)]; }

    /// Coefficient for any wavenumber, resolving k1 < 0 through Hermitian symmetry.
    Complex coeff(int k1, int k2) const noexcept;

    std::span<Complex> data() noexcept { return coeffs_; }
    std::span<const Complex> data() const noexcept { return coeffs_; }

    /// Calls f(k1, k2, coefficient&) for every stored mode.
    template <class F>
    void for_each_mode(F&& f) {
        const int n = grid_.n();
        for (int r = 0; r < n; ++r) {
            const int k2 = grid_.wavenumber(r);
            for (int k1 = 0; k1 <= n / 2; ++k1) f(k1, k2, coeffs_[std::size_t(r) * grid_.half() + k1]);
        }
    }
    template <class F>
    void for_each_mode(F&& f) const {
        const int n = grid_.n();
        for (int r = 0; r < n; ++r) {
            const int k2 = grid_.wavenumber(r);
            for (int k1 = 0; k1 <= n / 2; ++k1) f(k1, k2, coeffs_[std::size_t(r) * grid_.half() + k1]);
        }
    }

    /// Multiplicity of a stored mode in the full spectrum: 2 for 0 < k1 < n/2, else 1.
    double weight(int k1) const noexcept { return (k1 == 0 || k1 == grid_.n() / 2) ? 1.0 : 2.0; }

    Complex mean() const noexcept { return coeffs_[0]; }
    double max_abs() const noexcept;
    bool all_finite() const noexcept;

    SpectralField& operator+=(const SpectralField& o);
    SpectralField& operator-=(const SpectralField& o);
    SpectralField& operator*=(double a);
    /// this += a * o
    SpectralField& axpy(double a, const SpectralField& o);

    friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
    friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
    friend SpectralField operator*(double s, SpectralField a) { return a *= s; }

private:
    std::size_t index(int k1, int k2) const noexcept {
        return std::size_t(grid_.row_of(k2)) * grid_.half() + k1;
    }

    Grid grid_;
    std::vector<Complex> coeffs_;
};

/// Restores exact Hermitian symmetry on the self-conjugate columns k1 = 0 and k1 = n/2.
void enforce_hermitian(SpectralField& f);
/// Largest violation of coeff(-k) = conj(coeff(k)) over all wavenumbers.
double hermitian_defect(const SpectralField& f);

SpectralField forward_transform(const PhysicalField& p);
PhysicalField inverse_transform(const SpectralField& f);

/// Multiplies by |k|^beta. beta < 0 requires a zero-mean field (NegativePowerOnMean).
SpectralField apply_lambda(const SpectralField& f, double beta);

struct Velocity {
    SpectralField u1;
    SpectralField u2;
};

/// u = (-R2 theta, R1 theta): u1_hat = i k2/|k| theta_hat, u2_hat = -i k1/|k| theta_hat.
/// Both components vanish at k = 0 and on the Nyquist lines |k1| = n/2 or |k2| = n/2,
/// where an odd multiplier cannot produce a real field.
Velocity riesz_velocity(const SpectralField& theta);

/// Riesz transform R_j f, multiplier -i k_j/|k| (j = 1 or 2); Nyquist lines zeroed.
SpectralField riesz_transform(const SpectralField& f, int component);

/// Partial derivative d/dx_j, multiplier i k_j; Nyquist lines zeroed.
SpectralField derivative(const SpectralField& f, int component);

/// Zeroes modes with max(|k1|, |k2|) > n/3.
SpectralField dealias(const SpectralField& f);
void dealias_in_place(SpectralField& f);
bool is_dealiased(int n, int k1, int k2) noexcept;

enum class MollifierProfile { gaussian, raised_cosine };

const char* to_string(MollifierProfile p) noexcept;
MollifierProfile mollifier_profile_from_string(const std::string& s);

/// Unit-mass mollifier phi^eps(x) = eps^-2 phi(x/eps), realized as a radial
/// spectral multiplier m_eps(k) = m(eps |k|).
///   gaussian:       m(r) = exp(-r^2/2),               phi(y) = exp(-|y|^2/2) / (2 pi)
///   raised_cosine:  m(r) = (1 + cos r)/2 for r < pi, 0 beyond; phi is its inverse
///                   radial transform, evaluated by quadrature.
struct Mollifier {
    MollifierProfile profile = MollifierProfile::gaussian;
    double eps = 0.1;

    double symbol(double kmag) const noexcept;
    /// Unit-scale physical profile phi(|y|).
    double kernel(double r) const;
};

SpectralField mollify(const SpectralField& f, const Mollifier& m);

/// Rigid translation f(x) -> f(x - shift), exact for band-limited fields.
SpectralField translate(const SpectralField& f, double shift1, double shift2);

/// (2 pi)^2 sum_k |f_hat(k)|^2 |k|^{2 s}, with k = 0 included only when s == 0.
double spectral_energy(const SpectralField& f, double s = 0.0);

/// Pointwise product of two physical fields.
PhysicalField multiply(const PhysicalField& a, const PhysicalField& b);

}  // namespace qglab
