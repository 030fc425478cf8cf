#pragma once

// Pointwise complex kernels used by every field operation. A portable scalar
// reference implementation is always available; vectorized variants are
// selected once at startup from the CPU feature set (override with the
// CGO_SIMD environment variable: "scalar" or "avx2").

#include <complex>
#include <cstddef>
#include <string_view>

namespace cgo::kernels {

using cplx = std::complex<double>;

struct KernelTable {
    std::string_view name;
    // out[i] = a[i] * b[i]; out may alias a or b.
    void (*cmul)(const cplx* a, const cplx* b, cplx* out, std::size_t n);
    // out[i] = a[i] * conj(b[i]); out may alias a or b.
    void (*cmul_conj)(const cplx* a, const cplx* b, cplx* out, std::size_t n);
    // y[i] += alpha * x[i]
    void (*caxpy)(cplx alpha, const cplx* x, cplx* y, std::size_t n);
    // x[i] *= s
    void (*scale)(double s, cplx* x, std::size_t n);
    double (*sum_abs)(const cplx* x, std::size_t n);
    double (*sum_abs2)(const cplx* x, std::size_t n);
    double (*max_abs)(const cplx* x, std::size_t n);
    // sum_i a[i] * b[i] (bilinear, no conjugation)
    cplx (*dot)(const cplx* a, const cplx* b, std::size_t n);
};

const KernelTable& scalar_table();

// nullptr when the variant was not compiled in or the CPU lacks support.
const KernelTable* avx2_table();

// The table chosen for this process.
const KernelTable& active();

}  // namespace cgo::kernels
