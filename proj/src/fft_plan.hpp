#pragma once

// Internal: FFTW plans for one grid size. Plans are built with FFTW_ESTIMATE
// (deterministic plan choice) and FFTW_UNALIGNED, and executed through the
// new-array interface, which FFTW documents as thread-safe.

#include <fftw3.h>

#include <memory>

namespace qglab {

class FftPlan {
public:
    explicit FftPlan(int n);
    ~FftPlan();
    FftPlan(const FftPlan&) = delete;
    FftPlan& operator=(const FftPlan&) = delete;

    /// Unnormalized real-to-complex transform (n*n reals -> n*(n/2+1) complex).
    void forward(double* in, fftw_complex* out) const;
    /// Unnormalized complex-to-real transform; destroys `in`.
    void inverse(fftw_complex* in, double* out) const;

    static std::shared_ptr<const FftPlan> for_size(int n);

private:
    fftw_plan r2c_ = nullptr;
    fftw_plan c2r_ = nullptr;
};

}  // namespace qglab
