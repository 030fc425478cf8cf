#pragma once

// Quadratic phases, the rescaled bump psi_tau, the auxiliary function
// h = (1 - psi_tau) / conj(z - z0), and radial-quadrature checks of the
// exact norm scalings these objects obey on the plane.

#include <ostream>
#include <vector>

#include "cgo/grid.hpp"

namespace cgo {

// exp(sign * i tau (Phi + conj Phi)) with Phi + conj Phi = 2((x - x0)^2 - (y - y0)^2).
Field quadratic_phase(const Grid& grid, const PhaseParams& pp, int sign);
cplx quadratic_phase_at(cplx z, const PhaseParams& pp, int sign);

// Radial base bump psi(r) = 1 - smooth_step(r - 1): 1 on r <= 1, 0 on r >= 2.
struct BumpFamily {
    static double psi(double r);
    static double psi_prime(double r);

    // ||psi||_p on the plane (p may be infinite).
    static double norm(double p);
    // ||v . grad psi||_p on the plane.
    static double directional_norm(double p, cplx v);
};

// psi(tau^{1/2} (z - z0)); throws under_resolved_bump when tau^{-1/2} < h.
Field bump_tau(const Grid& grid, const PhaseParams& pp);
// Exact v . grad psi_tau sampled on the grid.
Field bump_tau_directional(const Grid& grid, const PhaseParams& pp, cplx v);

// h = (1 - psi_tau) / conj(z - z0), or (1 - psi_tau) / (z - z0) for the plain
// variant. The node z = z0 is set to 0 (h vanishes on the whole disc
// |z - z0| <= tau^{-1/2}).
enum class HVariant { conj_denominator, plain_denominator };
Field h_function(const Grid& grid, const PhaseParams& pp, HVariant variant = HVariant::conj_denominator);
// Pointwise closed forms of h, dbar h and v . grad h (conj_denominator variant).
cplx h_at(cplx z, const PhaseParams& pp);
cplx dbar_h_at(cplx z, const PhaseParams& pp);
cplx directional_h_at(cplx z, const PhaseParams& pp, cplx v);
Field dbar_h(const Grid& grid, const PhaseParams& pp);

// ||psi_tau||_p and ||v . grad psi_tau||_p on the plane by quadrature in the
// unscaled radius r over [0, 2 tau^{-1/2}].
double bump_norm_plane(double p, double tau);
double bump_directional_norm_plane(double p, double tau, cplx v);

// Norms of h and v . grad h over the whole plane by radial quadrature (the
// 1/|z| tail beyond the bump support is integrated in closed form).
double h_norm_plane(double p, double tau);
double directional_h_norm_plane(double p, double tau, cplx v);

struct InversePowerCheck {
    double a, p, tau;
    double numeric;
    double closed_form;
    double rel_err() const { return std::abs(numeric - closed_form) / closed_form; }
};

// || |z|^{-a} || over the plane minus B(0, tau^{-1/2}): quadrature out to
// radius 10 L plus the exact tail, against (2 pi / (a p - 2))^{1/p} tau^{a/2 - 1/p}.
// Throws invalid_exponent unless p > 2 / a.
InversePowerCheck inverse_power_norm_check(double a, double p, double tau, double L = 1.0);

void write_inverse_power_csv(std::ostream& os, const std::vector<InversePowerCheck>& rows);

}  // namespace cgo
