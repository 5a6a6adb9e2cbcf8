#include "qglab/fields.hpp"

#include <cmath>
#include <numbers>

#include "qglab/errors.hpp"

namespace qglab {

SpectralField single_mode(const Grid& grid, int k1, int k2) {
    const int n = grid.n();
    if (std::abs(k1) >= n / 2 || std::abs(k2) >= n / 2)
        throw ValidationError("single mode (" + std::to_string(k1) + "," + std::to_string(k2) +
                              ") is not resolved on an n = " + std::to_string(n) + " grid");
    SpectralField f(grid);
    if (k1 == 0 && k2 == 0) {
        f.at(0, 0) = 1.0;
        return f;
    }
    // cos(k.x) = (e^{ik.x} + e^{-ik.x}) / 2; store whichever of +-k has k1 >= 0.
    if (k1 < 0 || (k1 == 0 && k2 < 0)) {
        k1 = -k1;
        k2 = -k2;
    }
    f.at(k1, k2) += 0.5;
    if (k1 == 0) f.at(0, -k2) += 0.5;
    return f;
}

SpectralField cmt_datum(const Grid& grid) {
    SpectralField f(grid);
    // sin x1 sin x2 = (cos(x1 - x2) - cos(x1 + x2)) / 2
    f.at(1, -1) += 0.25;
    f.at(1, 1) -= 0.25;
    f.at(0, 1) += 0.5;
    f.at(0, -1) += 0.5;
    return f;
}

SpectralField random_shell_field(const Grid& grid, double kmax, double gamma, std::mt19937_64& rng,
                                 double amplitude) {
    const int n = grid.n();
    if (!(kmax >= 1.0) || kmax >= n / 2) throw ValidationError("shell cutoff kmax must satisfy 1 <= kmax < n/2");
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    SpectralField f(grid);
    f.for_each_mode([&](int k1, int k2, Complex& c) {
        const double k = std::hypot(double(k1), double(k2));
        if (k == 0.0 || k > kmax) return;
        const double a = amplitude * std::pow(k, -gamma);
        const double ph = phase(rng);
        c = Complex(a * std::cos(ph), a * std::sin(ph));
    });
    enforce_hermitian(f);
    return f;
}

SpectralField random_shell_field(const Grid& grid, double kmax, double gamma, std::uint64_t seed,
                                 double amplitude) {
    std::mt19937_64 rng(seed);
    return random_shell_field(grid, kmax, gamma, rng, amplitude);
}

}  // namespace qglab
