#pragma once

// A field at rest: physical node values plus the model parameters and time.
//
// On-disk layout (little-endian):
//   offset  size   field
//   0       4      magic "QGW1"
//   4       4      version (u32) = 1
//   8       4      n (u32)
//   12      8      t (f64)
//   20      8      alpha (f64)
//   28      8      kappa (f64)
//   36      8      mu (f64)
//   44      1      model (u8: 0 inviscid, 1 dissipative, 2 regularized)
//   45      7      zero padding
//   52      8 n^2  values (f64), row-major, x2 index slow

#include <cstdint>
#include <string>
#include <vector>

#include "qglab/models.hpp"
#include "qglab/spectral.hpp"

namespace qglab {

struct Snapshot {
    double t = 0;
    Model model = Model::inviscid;
    double alpha = 0;
    double kappa = 0;
    double mu = 0;
    PhysicalField theta;

    static Snapshot from_state(const SpectralField& theta, double t, const ModelParams& p);
    SpectralField spectral() const { return forward_transform(theta); }
};

inline constexpr std::uint32_t kSnapshotVersion = 1;
inline constexpr std::size_t kSnapshotHeaderBytes = 52;

std::size_t snapshot_size(int n);

std::vector<std::uint8_t> encode_snapshot(const Snapshot& s);
/// Throws CorruptSnapshot naming the failed check (magic, version, length, model).
Snapshot decode_snapshot(const std::vector<std::uint8_t>& bytes);

void save_snapshot(const std::string& path, const Snapshot& s);
Snapshot load_snapshot(const std::string& path);

}  // namespace qglab
