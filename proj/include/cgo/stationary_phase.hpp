#pragma once

// The quadratic-phase operator
//   E f(z0) = (2 tau / pi) \int exp(-i tau (Phi + conj Phi)) f(z) dm(z),  Phi = (z - z0)^2,
// applied as the Fourier multiplier exp(i (xi1^2 - xi2^2) / (8 tau)) on the
// grid's periodic frequency lattice. f is taken to be supported well inside X.

#include <vector>

#include "cgo/decay.hpp"
#include "cgo/grid.hpp"

namespace cgo {

class ChirpMultiplier {
  public:
    // tau may be negative (the adjoint); tau = 0 is rejected.
    ChirpMultiplier(const Grid& grid, double tau);

    const Grid& grid() const { return grid_; }
    double tau() const { return tau_; }
    // Multiplier values in FFT order, unit modulus.
    const CVector& values() const { return values_; }

    Field apply(const Field& f) const;

  private:
    Grid grid_;
    double tau_;
    CVector values_;
};

Field apply_E(const Field& f, double tau);

// The defining integral as a Riemann sum at every node z0:
//   (2 tau / pi) sum_w f(w) exp(-2i tau ((x - x0)^2 - (y - y0)^2)) h^2,
// evaluated as an exact aperiodic discrete convolution on a 2n lattice.
// Requires the sampling guard of validate_phase.
Field chirp_riemann_sum(const Field& f, double tau);

// ||E f - f||_2 over the tau ladder; predicted exponent -1 (first-order
// expansion of the multiplier for smooth f).
DecayReport convergence_E(const Field& f, const std::vector<double>& taus);

}  // namespace cgo
