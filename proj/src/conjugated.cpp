#include "cgo/conjugated.hpp"

#include <sstream>

#include "cgo/cauchy.hpp"
#include "cgo/phase.hpp"

namespace cgo {

Field apply_T(const Field& a, const PhaseParams& pp) {
    return cauchy_dbar_inv(quadratic_phase(a.grid(), pp, -1) * a);
}

Field ibp_right_hand_side(const Field& a, const PhaseParams& pp) {
    const Grid& g = a.grid();
    const Field em = quadratic_phase(g, pp, -1);
    const Field psi = bump_tau(g, pp);
    const Field h = h_function(g, pp);
    const Field hbar_d = dbar_h(g, pp);
    const Field da = dbar(a);

    Field bracket = em * h * a;
    bracket -= cauchy_dbar_inv(em * hbar_d * a);
    bracket -= cauchy_dbar_inv(em * h * da);
    Field out = cauchy_dbar_inv(em * psi * a);
    out.axpy(-1.0 / cplx(0.0, 2.0 * pp.tau), bracket);
    return out;
}

double ibp_residual(const Field& a, const PhaseParams& pp) {
    const Field lhs = apply_T(a, pp);
    const double scale = lp_norm(lhs, 2.0);
    if (scale == 0.0) return 0.0;
    return lp_norm(lhs - ibp_right_hand_side(a, pp), 2.0) / scale;
}

void check_T_lp_hypothesis(double p_star, double q) {
    const double iq = 1.0 / q;
    if (!(p_star > 2.0) || std::isinf(p_star) || !(q >= 1.0) || !(iq <= 0.5 + 1.0 / p_star) || !(iq > 0.5)) {
        std::ostringstream why;
        why << "need 2 < p* < inf and 1/2 + 1/p* >= 1/q > 1/2, got p* = " << p_star << ", q = " << q;
        throw Error(ErrorCode::hypothesis_violation, why.str());
    }
}

DecayReport measure_T_decay_inf(const Field& a, double p_star, const std::vector<double>& taus, cplx z0) {
    if (!(p_star > 2.0)) throw Error(ErrorCode::hypothesis_violation, "the sup-norm estimate needs p* > 2");
    std::vector<double> norms;
    for (double tau : taus) norms.push_back(lp_norm(apply_T(a, {tau, z0}), p_infinity));
    std::ostringstream label;
    label << "T_inf_pstar" << p_star;
    return make_decay_report(label.str(), taus, norms, -1.0 / p_star);
}

DecayReport measure_T_decay_lp(const Field& a, double p_star, double q, const std::vector<double>& taus, cplx z0) {
    check_T_lp_hypothesis(p_star, q);
    std::vector<double> norms;
    for (double tau : taus) norms.push_back(lp_norm(apply_T(a, {tau, z0}), p_star));
    std::ostringstream label;
    label << "T_lp_pstar" << p_star << "_q" << q;
    return make_decay_report(label.str(), taus, norms, 1.0 / q - 1.0 - 1.0 / p_star);
}

}  // namespace cgo
