#include "fft_plan.hpp"

#include <map>
#include <mutex>
#include <vector>

namespace qglab {

namespace {
// The FFTW planner is not thread-safe; every plan creation and destruction
// goes through this lock.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
}  // namespace

FftPlan::FftPlan(int n) {
    std::vector<double> real(std::size_t(n) * n);
    std::vector<fftw_complex> cplx(std::size_t(n) * (n / 2 + 1));
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    std::lock_guard lock(planner_mutex());
    r2c_ = fftw_plan_dft_r2c_2d(n, n, real.data(), cplx.data(), flags);
    c2r_ = fftw_plan_dft_c2r_2d(n, n, cplx.data(), real.data(), flags);
}

FftPlan::~FftPlan() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(r2c_);
    fftw_destroy_plan(c2r_);
}

void FftPlan::forward(double* in, fftw_complex* out) const { fftw_execute_dft_r2c(r2c_, in, out); }

void FftPlan::inverse(fftw_complex* in, double* out) const { fftw_execute_dft_c2r(c2r_, in, out); }

std::shared_ptr<const FftPlan> FftPlan::for_size(int n) {
    static std::mutex cache_mutex;
    static std::map<int, std::shared_ptr<const FftPlan>> cache;
    std::lock_guard lock(cache_mutex);
    auto& slot = cache[n];
    if (!slot) slot = std::make_shared<const FftPlan>(n);
    return slot;
}

}  // namespace qglab
