#include "cgo/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace cgo {

namespace {
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
}  // namespace

Fft2d::Fft2d(std::size_t N) : N_(N) {
    CVector scratch(N * N);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    const int n = static_cast<int>(N);
    // FFTW_MEASURE may pick a different algorithm per process, which would break
    // byte-identical reruns.
    const unsigned flags = FFTW_ESTIMATE;
    forward_plan_ = fftw_plan_dft_2d(n, n, buf, buf, FFTW_FORWARD, flags);
    backward_plan_ = fftw_plan_dft_2d(n, n, buf, buf, FFTW_BACKWARD, flags);
}

Fft2d::~Fft2d() {
    fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
    fftw_destroy_plan(static_cast<fftw_plan>(backward_plan_));
}

const Fft2d& Fft2d::get(std::size_t N) {
    static std::map<std::size_t, std::unique_ptr<Fft2d>> cache;
    std::lock_guard lock(planner_mutex());
    auto& slot = cache[N];
    if (!slot) slot.reset(new Fft2d(N));
    return *slot;
}

void Fft2d::forward(cplx* data) const {
    auto* buf = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(static_cast<fftw_plan>(forward_plan_), buf, buf);
}

void Fft2d::backward(cplx* data) const {
    auto* buf = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(static_cast<fftw_plan>(backward_plan_), buf, buf);
}

}  // namespace cgo
