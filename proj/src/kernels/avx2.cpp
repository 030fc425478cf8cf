// AVX2/FMA variants. Compiled with -mavx2 -mfma; only reached through the
// dispatch table after a runtime CPU check. One __m256d holds two interleaved
// complex doubles [re0, im0, re1, im1].

#include "cgo/kernels.hpp"

#include <immintrin.h>

#include <algorithm>
#include <cmath>

namespace cgo::kernels {
namespace {

inline __m256d load2(const cplx* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store2(cplx* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }

inline __m256d mul2(__m256d a, __m256d b) {
    const __m256d b_re = _mm256_movedup_pd(b);
    const __m256d b_im = _mm256_permute_pd(b, 0xF);
    const __m256d a_sw = _mm256_permute_pd(a, 0x5);
    return _mm256_fmaddsub_pd(a, b_re, _mm256_mul_pd(a_sw, b_im));
}

inline __m256d mul2_conj(__m256d a, __m256d b) {
    const __m256d b_re = _mm256_movedup_pd(b);
    const __m256d b_im = _mm256_permute_pd(b, 0xF);
    const __m256d a_sw = _mm256_permute_pd(a, 0x5);
    return _mm256_fmsubadd_pd(a, b_re, _mm256_mul_pd(a_sw, b_im));
}

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

inline cplx mul1(cplx a, cplx b) {
    return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

void cmul(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) store2(out + i, mul2(load2(a + i), load2(b + i)));
    for (; i < n; ++i) out[i] = mul1(a[i], b[i]);
}

void cmul_conj(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) store2(out + i, mul2_conj(load2(a + i), load2(b + i)));
    for (; i < n; ++i) out[i] = mul1(a[i], std::conj(b[i]));
}

void caxpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
    const __m256d al = _mm256_setr_pd(alpha.real(), alpha.imag(), alpha.real(), alpha.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) store2(y + i, _mm256_add_pd(load2(y + i), mul2(load2(x + i), al)));
    for (; i < n; ++i) y[i] += mul1(alpha, x[i]);
}

void scale(double s, cplx* x, std::size_t n) {
    const __m256d sv = _mm256_set1_pd(s);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) store2(x + i, _mm256_mul_pd(load2(x + i), sv));
    for (; i < n; ++i) x[i] *= s;
}

double sum_abs2(const cplx* x, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v0 = load2(x + i), v1 = load2(x + i + 2);
        acc0 = _mm256_fmadd_pd(v0, v0, acc0);
        acc1 = _mm256_fmadd_pd(v1, v1, acc1);
    }
    double acc = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) acc += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    return acc;
}

double sum_abs(const cplx* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v0 = load2(x + i), v1 = load2(x + i + 2);
        // hadd of the squares gives [|x0|^2, |x2|^2, |x1|^2, |x3|^2]
        const __m256d m = _mm256_hadd_pd(_mm256_mul_pd(v0, v0), _mm256_mul_pd(v1, v1));
        acc = _mm256_add_pd(acc, _mm256_sqrt_pd(m));
    }
    double total = hsum(acc);
    for (; i < n; ++i) total += std::sqrt(x[i].real() * x[i].real() + x[i].imag() * x[i].imag());
    return total;
}

double max_abs(const cplx* x, std::size_t n) {
    __m256d mx = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v0 = load2(x + i), v1 = load2(x + i + 2);
        mx = _mm256_max_pd(mx, _mm256_hadd_pd(_mm256_mul_pd(v0, v0), _mm256_mul_pd(v1, v1)));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, mx);
    double m2 = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
    for (; i < n; ++i) m2 = std::max(m2, x[i].real() * x[i].real() + x[i].imag() * x[i].imag());
    return std::sqrt(m2);
}

cplx dot(const cplx* a, const cplx* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) acc = _mm256_add_pd(acc, mul2(load2(a + i), load2(b + i)));
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    cplx total{lanes[0] + lanes[2], lanes[1] + lanes[3]};
    for (; i < n; ++i) total += mul1(a[i], b[i]);
    return total;
}

}  // namespace

const KernelTable& avx2_kernels() {
    static const KernelTable table{"avx2", cmul, cmul_conj, caxpy, scale,
                                   sum_abs, sum_abs2, max_abs, dot};
    return table;
}

}  // namespace cgo::kernels
