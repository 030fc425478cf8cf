#pragma once

#include <cstddef>
#include <memory>

#include "cgo/grid.hpp"

namespace cgo {

// In-place unnormalized 2-D complex transforms of size N x N (row-major),
// backed by FFTW. Instances are cached per size and immutable after planning;
// execution is safe from multiple threads on distinct buffers.
class Fft2d {
  public:
    static const Fft2d& get(std::size_t N);

    ~Fft2d();
    Fft2d(const Fft2d&) = delete;
    Fft2d& operator=(const Fft2d&) = delete;

    std::size_t size() const { return N_; }
    // data must be 64-byte aligned (CVector or Field storage).
    void forward(cplx* data) const;
    void backward(cplx* data) const;

  private:
    explicit Fft2d(std::size_t N);
    std::size_t N_;
    void* forward_plan_ = nullptr;
    void* backward_plan_ = nullptr;
};

// Signed integer frequency index of DFT bin k for length N: 0..N/2-1, -N/2..-1.
inline long fft_frequency_index(std::size_t k, std::size_t N) {
    const long kk = static_cast<long>(k);
    const long NN = static_cast<long>(N);
    return kk < NN / 2 ? kk : kk - NN;
}

}  // namespace cgo
