#include "cgo/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace cgo::kernels {
namespace {

// Complex products are written out by hand: std::complex operator* carries
// the Annex G NaN recovery path, which we neither need nor want to match.
inline cplx mul(cplx a, cplx b) {
    return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

void cmul(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = mul(a[i], b[i]);
}

void cmul_conj(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = mul(a[i], std::conj(b[i]));
}

void caxpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += mul(alpha, x[i]);
}

void scale(double s, cplx* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) x[i] *= s;
}

double sum_abs(const cplx* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += std::hypot(x[i].real(), x[i].imag());
    return acc;
}

double sum_abs2(const cplx* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    return acc;
}

double max_abs(const cplx* x, std::size_t n) {
    double m2 = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        m2 = std::max(m2, x[i].real() * x[i].real() + x[i].imag() * x[i].imag());
    return std::sqrt(m2);
}

cplx dot(const cplx* a, const cplx* b, std::size_t n) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        re += a[i].real() * b[i].real() - a[i].imag() * b[i].imag();
        im += a[i].real() * b[i].imag() + a[i].imag() * b[i].real();
    }
    return {re, im};
}

}  // namespace

const KernelTable& scalar_table() {
    static const KernelTable table{"scalar", cmul, cmul_conj, caxpy, scale,
                                   sum_abs, sum_abs2, max_abs, dot};
    return table;
}

}  // namespace cgo::kernels
