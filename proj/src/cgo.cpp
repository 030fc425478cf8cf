#include "cgo/cgo.hpp"

#include <sstream>

#include "cgo/cauchy.hpp"
#include "cgo/decay.hpp"
#include "cgo/fft.hpp"
#include "cgo/kernels.hpp"
#include "cgo/phase.hpp"

namespace cgo {

namespace {

void require_side(int j) {
    if (j != 1 && j != 2) throw Error(ErrorCode::config_error, "side must be 1 or 2");
}

// Gaussian (1 / (pi w^2)) exp(-|z|^2 / w^2) convolution as a Fourier multiplier.
Field gaussian_smooth(const Field& f, double w) {
    const Grid& g = f.grid();
    const std::size_t n = g.n();
    const double dxi = 2.0 * pi / (static_cast<double>(n) * g.spacing());
    Field out = f;
    const auto& fft = Fft2d::get(n);
    fft.forward(out.data());
    const double norm = 1.0 / static_cast<double>(n * n);
    for (std::size_t k2 = 0; k2 < n; ++k2) {
        const double xi2 = dxi * static_cast<double>(fft_frequency_index(k2, n));
        for (std::size_t k1 = 0; k1 < n; ++k1) {
            const double xi1 = dxi * static_cast<double>(fft_frequency_index(k1, n));
            out[k2 * n + k1] *= norm * std::exp(-0.25 * w * w * (xi1 * xi1 + xi2 * xi2));
        }
    }
    fft.backward(out.data());
    return out;
}

struct Weights {
    Field em, ep;
};

Weights weights(const Grid& g, const PhaseParams& pp) {
    return {quadratic_phase(g, pp, -1), quadratic_phase(g, pp, +1)};
}

Field outer_inverse(int j, const Field& f) { return j == 1 ? cauchy_dbar_inv(f) : cauchy_d_inv(f); }
Field inner_inverse(int j, const Field& f) { return j == 1 ? cauchy_d_inv(f) : cauchy_dbar_inv(f); }

Field apply_S_with(const Field& f, int j, const Weights& w, const Field& q, const Field& chi) {
    Field inner = inner_inverse(j, w.ep * q * f);
    inner *= w.em;
    inner *= chi;
    Field out = outer_inverse(j, inner);
    out *= cplx(-0.25);
    return out;
}

Field varphi_with(const CgoSetup& s, const Weights& w, cplx beta) {
    Field src = s.inner;
    for (std::size_t i = 0; i < src.size(); ++i) src[i] = (beta - src[i]) * s.chi[i] * w.em[i];
    Field out = outer_inverse(s.side, src);
    out *= cplx(0.25);
    return out;
}

}  // namespace

CgoSetup CgoSetup::make(int side, const Field& q, const BetaChoice& beta) {
    require_side(side);
    const Grid& g = q.grid();
    CgoSetup s{side, q, make_cutoff_chi(g), inner_inverse(side, q), Field(g), beta};
    if (beta.mode == BetaChoice::Mode::smoothed_cauchy) {
        const double w = beta.width > 0.0 ? beta.width : 4.0 * g.spacing();
        s.beta_field = gaussian_smooth(s.inner, w);
    }
    return s;
}

cplx CgoSetup::beta_at(cplx z0) const {
    const Grid& g = beta_field.grid();
    const double h = g.spacing(), L = g.half_width();
    const double fx = (z0.real() + L) / h, fy = (z0.imag() + L) / h;
    const double jx = std::clamp(std::floor(fx), 0.0, static_cast<double>(g.n() - 2));
    const double jy = std::clamp(std::floor(fy), 0.0, static_cast<double>(g.n() - 2));
    const double tx = fx - jx, ty = fy - jy;
    const auto j = static_cast<std::size_t>(jx), k = static_cast<std::size_t>(jy);
    return (1 - tx) * (1 - ty) * beta_field.at(j, k) + tx * (1 - ty) * beta_field.at(j + 1, k) +
           (1 - tx) * ty * beta_field.at(j, k + 1) + tx * ty * beta_field.at(j + 1, k + 1);
}

Field apply_D(const Field& f, int j, const PhaseParams& pp) {
    require_side(j);
    const Weights w = weights(f.grid(), pp);
    Field mid = (j == 1 ? dbar(f) : d(f)) * w.ep;
    Field out = (j == 1 ? d(mid) : dbar(mid)) * w.em;
    out *= cplx(-4.0);
    return out;
}

Field apply_S(const Field& f, int j, const PhaseParams& pp, const Field& q, const Field& chi) {
    require_side(j);
    require_same_grid(f, q);
    require_same_grid(f, chi);
    return apply_S_with(f, j, weights(f.grid(), pp), q, chi);
}

Field make_varphi(const CgoSetup& setup, const PhaseParams& pp) {
    return varphi_with(setup, weights(setup.q.grid(), pp), setup.beta_at(pp.z0));
}

Field make_varphi(int j, const PhaseParams& pp, const Field& q, const BetaChoice& beta, const Field& chi) {
    CgoSetup s = CgoSetup::make(j, q, beta);
    require_same_grid(q, chi);
    s.chi = chi;
    return make_varphi(s, pp);
}

CgoSeries build_cgo_series(const CgoSetup& setup, const PhaseParams& pp, double tol, std::size_t m_max) {
    if (m_max < 1) throw Error(ErrorCode::order_out_of_range, "m_max must be at least 1");
    const Grid& g = setup.q.grid();
    const Weights w = weights(g, pp);
    CgoSeries s(g);
    s.side = setup.side;
    s.pp = pp;
    s.beta = setup.beta_at(pp.z0);
    s.terms.push_back(w.em);
    s.term_sup_norms.push_back(lp_norm(w.em, p_infinity));
    s.terms.push_back(varphi_with(setup, w, s.beta));
    s.term_sup_norms.push_back(lp_norm(s.terms.back(), p_infinity));
    while (s.order() < m_max && s.term_sup_norms.back() >= tol) {
        s.terms.push_back(apply_S_with(s.terms.back(), setup.side, w, setup.q, setup.chi));
        s.term_sup_norms.push_back(lp_norm(s.terms.back(), p_infinity));
        if (s.order() == 2 && s.term_sup_norms[1] > 0.0 && s.term_sup_norms[2] >= s.term_sup_norms[1]) {
            std::ostringstream why;
            why << "series not contracting at tau = " << pp.tau << ": ||F_2|| / ||F_1|| = "
                << s.term_sup_norms[2] / s.term_sup_norms[1];
            throw Error(ErrorCode::tau_too_small, why.str());
        }
    }
    s.converged = s.term_sup_norms.back() < tol;
    for (const auto& t : s.terms) s.f += t;
    return s;
}

CgoSeries build_cgo_series(int j, const PhaseParams& pp, const Field& q, const BetaChoice& beta, double tol,
                           std::size_t m_max) {
    return build_cgo_series(CgoSetup::make(j, q, beta), pp, tol, m_max);
}

double cgo_residual(const CgoSeries& series, const Field& q) {
    const Grid& g = q.grid();
    const Field chi = make_cutoff_chi(g);
    Field r = apply_D(chi * series.f, series.side, series.pp);
    r -= q * series.f;
    const double num = lp_norm(r, 1.0, Region::omega());
    const double den = lp_norm(q, 1.0, Region::omega());
    return den > 0.0 ? num / den : num;
}

Field cgo_solution(const CgoSeries& series) {
    const PhaseParams pp = series.pp;
    const int side = series.side;
    return Field::from_function(series.f.grid(), [&](cplx z) -> cplx {
        const cplx phi = (z - pp.z0) * (z - pp.z0);
        return std::exp(cplx(0.0, pp.tau) * (side == 1 ? phi : std::conj(phi)));
    }) * series.f;
}

double cgo_fixed_point_defect(const CgoSeries& series, const Field& q) {
    const Field chi = make_cutoff_chi(q.grid());
    const Field tail = series.f - series.terms[0];
    Field r = tail - series.terms[1];
    r -= apply_S(tail, series.side, series.pp, q, chi);
    return lp_norm(r, p_infinity);
}

AlphaFit fit_envelope(const std::vector<double>& taus, const std::vector<std::vector<double>>& term_norms,
                      double floor) {
    if (taus.size() != term_norms.size()) throw Error(ErrorCode::config_error, "one norm list per tau expected");
    AlphaFit fit;
    fit.taus = taus;
    fit.term_norms = term_norms;
    for (const auto& norms : term_norms) {
        double rho = 0.0;
        for (std::size_t m = 1; m < norms.size(); ++m)
            if (norms[m] > floor) rho = std::max(rho, std::pow(norms[m], 1.0 / static_cast<double>(m)));
        fit.rho.push_back(rho);
    }
    const LogLogFit ll = fit_loglog(fit.taus, fit.rho);
    fit.alpha = -ll.slope;
    fit.c_emp = std::exp(ll.intercept);
    fit.fit_residual = ll.residual;
    for (std::size_t i = 0; i < taus.size(); ++i) {
        const double env = fit.c_emp * std::pow(taus[i], -fit.alpha);
        for (std::size_t m = 1; m < term_norms[i].size(); ++m) {
            const double v = term_norms[i][m];
            if (v <= floor) continue;
            fit.worst_envelope_ratio = std::max(fit.worst_envelope_ratio, v / std::pow(env, static_cast<double>(m)));
        }
    }
    return fit;
}

AlphaFit fit_alpha(const CgoSetup& setup, const std::vector<double>& taus, cplx z0, double tol, std::size_t m_max,
                   double floor) {
    std::vector<std::vector<double>> norms;
    for (double tau : taus) norms.push_back(build_cgo_series(setup, {tau, z0}, tol, m_max).term_sup_norms);
    return fit_envelope(taus, norms, floor);
}

}  // namespace cgo
