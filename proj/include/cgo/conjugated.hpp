#pragma once

// The conjugated Cauchy operator T a = dbar^{-1}(exp(-i tau (Phi + conj Phi)) a),
// its integration-by-parts split around the stationary point z0, and measured
// decay of its norms in tau.

#include <vector>

#include "cgo/decay.hpp"
#include "cgo/grid.hpp"

namespace cgo {

Field apply_T(const Field& a, const PhaseParams& pp);

// The right-hand side of the integration-by-parts formula
//   dbar^{-1}(e^- psi_tau a)
//     - (1 / 2 i tau) (e^- h a - dbar^{-1}(e^- (dbar h) a) - dbar^{-1}(e^- h dbar a)),
// with e^- = exp(-i tau (Phi + conj Phi)).
Field ibp_right_hand_side(const Field& a, const PhaseParams& pp);

// Relative L^2(X) distance between apply_T(a) and ibp_right_hand_side(a);
// 0 for a = 0.
double ibp_residual(const Field& a, const PhaseParams& pp);

// ||T a||_inf over X against the predicted exponent -1/p_star (p_star > 2).
DecayReport measure_T_decay_inf(const Field& a, double p_star, const std::vector<double>& taus, cplx z0 = {});

// ||T a||_{p_star} over X against 1/q - 1 - 1/p_star. Throws
// hypothesis_violation unless 2 < p_star < inf and 1/2 + 1/p_star >= 1/q > 1/2.
DecayReport measure_T_decay_lp(const Field& a, double p_star, double q, const std::vector<double>& taus,
                               cplx z0 = {});

// The exponent check used by measure_T_decay_lp, exposed for the CLI.
void check_T_lp_hypothesis(double p_star, double q);

}  // namespace cgo
