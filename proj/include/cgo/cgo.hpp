#pragma once

// The conjugated operators D_j, S_j, the seeds phi_j and the Neumann series
// f_j = F_{j,0} + sum_{m >= 1} F_{j,m}, F_{j,0} = e^-, F_{j,1} = phi_j,
// F_{j,m+1} = S_j F_{j,m}, with e^{+-} = exp(+-i tau (Phi + conj Phi)).
//
//   D_1 f = -4 e^- d(e^+ dbar f),     D_2 f = -4 e^- dbar(e^+ d f)
//   S_1 f = -1/4 dbar^{-1}(e^- chi d^{-1}(e^+ q f))
//   S_2 f = -1/4 d^{-1}(e^- chi dbar^{-1}(e^+ q f))
//   phi_1 = 1/4 dbar^{-1}(e^- chi (beta_1(z0) - d^{-1} q))
//   phi_2 = 1/4 d^{-1}(e^- chi (beta_2(z0) - dbar^{-1} q))

#include <limits>
#include <vector>

#include "cgo/grid.hpp"

namespace cgo {

struct BetaChoice {
    enum class Mode { zero, smoothed_cauchy };
    Mode mode = Mode::smoothed_cauchy;
    // Gaussian width for smoothed_cauchy; 0 selects 4h.
    double width = 0.0;
};

// Everything about side j and potential q that does not depend on tau or z0:
// the cutoff, the inner Cauchy transform of q and the beta table.
struct CgoSetup {
    int side = 1;
    Field q;
    Field chi;
    Field inner;       // d^{-1} q (side 1) or dbar^{-1} q (side 2)
    Field beta_field;  // G_w * inner, or zero
    BetaChoice beta;

    static CgoSetup make(int side, const Field& q, const BetaChoice& beta = {});
    // beta_j(z0), bilinear in the node values of beta_field.
    cplx beta_at(cplx z0) const;
};

// D_j by spectral derivatives; f must be compactly supported in X (multiply by
// the cutoff first).
Field apply_D(const Field& f, int j, const PhaseParams& pp);
Field apply_S(const Field& f, int j, const PhaseParams& pp, const Field& q, const Field& chi);
Field make_varphi(int j, const PhaseParams& pp, const Field& q, const BetaChoice& beta, const Field& chi);
Field make_varphi(const CgoSetup& setup, const PhaseParams& pp);

struct CgoSeries {
    explicit CgoSeries(const Grid& grid) : f(grid) {}

    int side = 1;
    PhaseParams pp{};
    std::vector<Field> terms;           // F_{j,0..M}
    std::vector<double> term_sup_norms; // ||F_{j,m}||_inf over X
    Field f;                            // sum of the terms
    cplx beta{};
    bool converged = false;             // reached ||F_M||_inf < tol
    double alpha_fitted = std::numeric_limits<double>::quiet_NaN();

    std::size_t order() const { return terms.empty() ? 0 : terms.size() - 1; }
};

// Throws tau_too_small when ||F_2|| / ||F_1|| >= 1. Stops at ||F_m||_inf < tol
// or m = m_max (the latter is reported through converged = false).
CgoSeries build_cgo_series(const CgoSetup& setup, const PhaseParams& pp, double tol = 1e-6,
                           std::size_t m_max = 20);
CgoSeries build_cgo_series(int j, const PhaseParams& pp, const Field& q, const BetaChoice& beta,
                           double tol = 1e-6, std::size_t m_max = 20);

// ||D_j(chi f_j) - q f_j||_{L^1} over {chi = 1} = Omega, relative to
// ||q||_{L^1(Omega)} (absolute when q = 0).
double cgo_residual(const CgoSeries& series, const Field& q);

// u_1 = exp(i tau Phi) f_1 or u_2 = exp(i tau conj Phi) f_2, Phi = (z - z0)^2.
Field cgo_solution(const CgoSeries& series);

// f_j - e^- - phi_j - S_j(f_j - e^-) in sup norm (the truncation tail).
double cgo_fixed_point_defect(const CgoSeries& series, const Field& q);

// Geometric envelope ||F_{j,m}||_inf <= (C tau^{-alpha})^m fitted over a tau
// ladder: rho(tau) = max_m ||F_m||^{1/m} and log rho = log C - alpha log tau.
struct AlphaFit {
    std::vector<double> taus;
    std::vector<double> rho;
    std::vector<std::vector<double>> term_norms;  // per tau, m = 0..M
    double alpha = 0.0;
    double c_emp = 0.0;
    double fit_residual = 0.0;
    // max over tau and m >= 1 of ||F_m|| / (C tau^{-alpha})^m
    double worst_envelope_ratio = 0.0;
    bool envelope_ok(double slack) const { return worst_envelope_ratio <= slack; }
};

// Fit from precomputed norms (one list m = 0..M per tau; pass the elementwise
// max over several z0 to cover a sample set). Norms below floor are treated
// as round-off and left out of rho.
AlphaFit fit_envelope(const std::vector<double>& taus, const std::vector<std::vector<double>>& term_norms,
                      double floor = 1e-13);
AlphaFit fit_alpha(const CgoSetup& setup, const std::vector<double>& taus, cplx z0 = {}, double tol = 1e-6,
                   std::size_t m_max = 20, double floor = 1e-13);

}  // namespace cgo
