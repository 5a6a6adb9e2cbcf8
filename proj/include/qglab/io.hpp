#pragma once

// Run configuration (flat key=value text), initial-data presets and the CSV
// time-series writer.
//
// Config grammar: one `key=value` per line, '#' starts a comment, blank
// lines ignored, whitespace around keys and values trimmed. Unknown and
// duplicate keys are errors.
//
// Presets for `init` and `forcing`:
//   single:k1,k2      cos(k1 x1 + k2 x2)
//   cmt               sin x1 sin x2 + cos x2
//   random:smax,gamma seeded shell spectrum |k|^-gamma on 1 <= |k| <= smax
// Any other `init` value is read as a snapshot path.

#include <cstdint>
#include <string>
#include <vector>

#include "qglab/diagnostics.hpp"
#include "qglab/models.hpp"
#include "qglab/spectral.hpp"
#include "qglab/timestepper.hpp"

namespace qglab {

struct RunConfig {
    Model model = Model::inviscid;
    double alpha = 0.5;
    double kappa = 0.0;
    double mu = 0.0;
    int n = 64;
    double dt = 1e-3;
    double t_end = 1.0;
    Scheme scheme = Scheme::etd_rk4;
    bool dealias = true;
    std::string init = "cmt";
    std::uint64_t seed = 0;
    int diag_every = 10;
    int snapshot_every = 0;
    std::string output_dir = "qglab_out";
    double s = 2.0;      // Sobolev index of the `hs` column
    double sigma = 2.0;  // ladder exponent
    double c0 = 1.0;     // small-data threshold constant
    double c_ladder = 1.0;
    double m_threshold = 1e3;  // extension threshold for the blow-up integrals
    MollifierProfile mollifier = MollifierProfile::gaussian;
    std::string forcing = "none";
    double forcing_amplitude = 1.0;

    /// Throws ValidationError naming the broken invariant.
    void validate() const;

    ModelParams model_params() const;
    StepperConfig stepper() const;
    NormOptions norm_options() const;
    Grid grid() const { return Grid(n); }
};

/// Parses config text; throws ParseError (with line) or ValidationError.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Canonical text form; parse_config(format_config(c)) reproduces c.
std::string format_config(const RunConfig& c);

/// True when `spec` names a preset (as opposed to a snapshot path).
bool is_preset(const std::string& spec);
SpectralField make_preset(const std::string& spec, const Grid& grid, std::uint64_t seed);

/// Initial state from cfg.init (preset or snapshot; a snapshot must match cfg.n).
SpectralField initial_condition(const RunConfig& cfg);

inline constexpr const char* kSeriesHeader =
    "t,l2,l3,l4,linf,hs,h1,energy,mod_energy,diss_integral,balance_residual,q_inf,ladder";

/// CSV with kSeriesHeader, 17 significant digits. Throws IoError on failure or an empty series.
void write_series(const std::string& path, const std::vector<NormRecord>& records);
std::string format_series(const std::vector<NormRecord>& records);

struct SeriesTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};
SeriesTable read_series(const std::string& path);

}  // namespace qglab
