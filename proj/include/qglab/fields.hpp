#pragma once

// Initial data and synthetic test fields.

#include <cstdint>
#include <random>

#include "qglab/spectral.hpp"

namespace qglab {

/// cos(k1 x1 + k2 x2)
SpectralField single_mode(const Grid& grid, int k1, int k2);

/// sin x1 sin x2 + cos x2, a standard smooth QG test datum.
SpectralField cmt_datum(const Grid& grid);

/// Zero-mean field with |theta_hat(k)| = amplitude * |k|^-gamma on 1 <= |k| <= kmax and
/// independent uniform phases; Hermitian, Nyquist lines empty. Requires kmax < n/2.
SpectralField random_shell_field(const Grid& grid, double kmax, double gamma, std::mt19937_64& rng,
                                 double amplitude = 1.0);
SpectralField random_shell_field(const Grid& grid, double kmax, double gamma, std::uint64_t seed,
                                 double amplitude = 1.0);

}  // namespace qglab
