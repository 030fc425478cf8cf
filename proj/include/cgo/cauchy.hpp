#pragma once

// Wirtinger derivatives and the Cauchy operators on a Grid.
//
//   dbar = (d/dx + i d/dy) / 2,  d = (d/dx - i d/dy) / 2,
//   dbar^{-1} u = 1/(pi z) * u,  d^{-1} u = 1/(pi conj(z)) * u.
//
// Derivatives are spectral on the n x n periodic grid, so their input must be
// compactly supported inside X (multiply by the cutoff first).
//
// The Cauchy operators are aperiodic discrete convolutions evaluated with a
// zero-padded 2n x 2n FFT. The discrete kernel is the band-limited sampling of
// 1/(pi z) truncated to |z| <= 2 sqrt(2) L (which covers X - X): its exact
// Fourier transform, -2i (1 - J0(|xi| D)) / (xi1 + i xi2), is sampled on a
// 4n x 4n lattice, inverted once, and windowed to offsets inside X - X. For
// inputs resolved by the grid the result agrees with the continuum transform
// to near machine precision on X.

#include <cstdint>
#include <memory>

#include "cgo/grid.hpp"

namespace cgo {

struct CauchyKernelTable {
    Grid grid;
    std::size_t padded_n;      // 2n
    double truncation_radius;  // 2 sqrt(2) L
    // Real-space kernels at offsets (m1, m2) h, |m_i| < n, stored cyclically on
    // the 2n x 2n lattice. Entry (0, 0) is exactly zero.
    CVector dbar_inv_kernel;
    CVector d_inv_kernel;
    CVector beurling_kernel;
    // Forward transforms of the above, pre-divided by (2n)^2.
    CVector dbar_inv_hat;
    CVector d_inv_hat;
    CVector beurling_hat;

    // Built on first use per (n, L) and shared afterwards; depends only on the
    // grid, never on tau or z0.
    static std::shared_ptr<const CauchyKernelTable> for_grid(const Grid& grid);

    cplx dbar_inv_at(long m1, long m2) const;
};

Field dbar(const Field& f);
Field d(const Field& f);
// Spectral Laplacian 4 d dbar.
Field laplacian(const Field& f);

Field cauchy_dbar_inv(const Field& f);
Field cauchy_d_inv(const Field& f);

// Beurling transform d dbar^{-1}. The derivative is composed with the
// truncated kernel on the padded lattice, so the result is valid on all of X
// even though dbar^{-1} f is not compactly supported.
Field beurling(const Field& f);

// Same convolution as cauchy_dbar_inv, carried out on a pad_factor * n cyclic
// lattice (pad_factor >= 2). Used to confirm the 2n padding is alias-free.
Field cauchy_dbar_inv_padded(const Field& f, std::size_t pad_factor);

// ||dbar(chi dbar^{-1} f) - f|| / ||f|| in L^2(Omega), chi the grid cutoff.
// The cutoff makes the transform compactly supported so the periodic
// derivative applies; it equals 1 on Omega, where f must be supported.
double left_inverse_residual(const Field& f);

// W^{1,p} norm lp(f) + lp(d f) + lp(dbar f) with spectral derivatives; f must
// be compactly supported inside X.
double w1p_norm(const Field& f, double p);

// W^{1,p} norm of dbar^{-1} f, using dbar dbar^{-1} f = f and
// d dbar^{-1} f = beurling(f) so that no derivative of the non-compact
// transform is taken on the periodic grid.
double cauchy_w1p_norm(const Field& f, double p);

struct BoundedMapReport {
    double p;
    std::size_t trials;
    std::size_t skipped;        // zero fields (0/0 guarded)
    double max_ratio_coarse;    // max over trials of ||dbar^{-1} f||_{W1p} / ||f||_p at n
    double max_ratio_fine;      // same at 2n
    double relative_change;     // |fine - coarse| / coarse
};

// Random smooth fields supported in Omega, evaluated on `grid` and on its 2n
// refinement. Pass zero_fields to include identically-zero inputs.
BoundedMapReport bounded_map_check(const Grid& grid, double p, std::size_t trials,
                                   std::uint64_t seed, bool zero_fields = false);

}  // namespace cgo
