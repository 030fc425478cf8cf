// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance            run every criterion
//   acceptance 3 7        run criteria 3 and 7
//
// Exit status is nonzero when any selected criterion fails. Reference values
// (closed forms, slope fits, direct quadratures) are computed here, not taken
// from the library.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cgo/cauchy.hpp"
#include "cgo/cgo.hpp"
#include "cgo/conjugated.hpp"
#include "cgo/dn_map.hpp"
#include "cgo/phase.hpp"
#include "cgo/potentials.hpp"
#include "cgo/random_fields.hpp"
#include "cgo/reconstruct.hpp"
#include "cgo/stationary_phase.hpp"

using namespace cgo;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void check(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "] ";
        }
    }
};

// Least-squares slope of log y against log x.
double slope(const std::vector<double>& x, const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::vector<double> map(const std::vector<double>& taus, const std::function<double(double)>& fn) {
    std::vector<double> out;
    for (double t : taus) out.push_back(fn(t));
    return out;
}

bool strictly_decreasing(const std::vector<double>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if (!(v[i] < v[i - 1])) return false;
    return true;
}

std::string num(double v) {
    std::ostringstream os;
    os.precision(4);
    os << v;
    return os.str();
}

Grid base_grid(std::size_t n = 256) { return Grid::make(n, 0.875, 0.5); }

double sobolev_conjugate(double p) { return 1.0 / (1.0 / p - 0.5); }

void criterion_1(Outcome& o) {
    double worst = 0.0;
    for (double a : {1.0, 2.0})
        for (double p : {3.0, 4.0})
            for (double tau : {1.0, 4.0, 16.0, 64.0}) {
                const double exact = std::pow(2.0 * pi / (a * p - 2.0), 1.0 / p) * std::pow(tau, a / 2.0 - 1.0 / p);
                const double got = inverse_power_norm_check(a, p, tau, 0.875).numeric;
                worst = std::max(worst, std::abs(got - exact) / exact);
            }
    o.detail << "max relative error " << num(worst);
    o.check(worst <= 1e-3, "relative error <= 1e-3");
}

void criterion_2(Outcome& o) {
    const std::vector<double> taus = {4, 8, 16, 32, 64, 128, 256};
    const cplx v{0.6, 0.8};
    double worst = 0.0;
    auto fit = [&](double predicted, const std::function<double(double)>& norm) {
        worst = std::max(worst, std::abs(slope(taus, map(taus, norm)) - predicted));
    };
    for (double p : {1.5, 2.0, 4.0}) {
        fit(-1.0 / p, [&](double t) { return bump_norm_plane(p, t); });
        fit(0.5 - 1.0 / p, [&](double t) { return bump_directional_norm_plane(p, t, v); });
    }
    for (double p : {3.0, 4.0, 6.0}) fit(0.5 - 1.0 / p, [&](double t) { return h_norm_plane(p, t); });
    for (double p : {1.5, 3.0}) fit(1.0 - 1.0 / p, [&](double t) { return directional_h_norm_plane(p, t, v); });
    o.detail << "max |fitted - predicted| " << num(worst);
    o.check(worst <= 0.05, "exponents within 0.05");
}

void criterion_3(Outcome& o) {
    const Grid gd = Grid::make(256, 2.0, 1.0);
    const double a = 0.5;
    const Field ind = Field::from_function(gd, [&](cplx z) -> cplx { return std::abs(z) <= a ? 1.0 : 0.0; });
    const Field u = cauchy_dbar_inv(ind);
    double err = 0.0;
    for (std::size_t i = 0; i < gd.size(); ++i) {
        const cplx z = gd.node(i);
        err = std::max(err, std::abs(u[i] - (std::abs(z) <= a ? std::conj(z) : a * a / z)));
    }
    const Grid g = base_grid();
    std::mt19937_64 rng(20240611);
    double left = 0.0;
    for (int t = 0; t < 3; ++t) {
        const Field f = WindowedModes::random(rng, 8, 10.0, g.omega_radius()).sample(g);
        // ||dbar(chi dbar^{-1} f) - f|| on Omega, assembled here.
        const Field back = dbar(make_cutoff_chi(g) * cauchy_dbar_inv(f));
        left = std::max(left, lp_norm(back - f, 2.0, Region::omega()) / lp_norm(f, 2.0, Region::omega()));
    }
    o.detail << "disc error / h " << num(err / gd.spacing()) << ", left inverse " << num(left);
    o.check(err <= 5.0 * gd.spacing(), "disc error <= 5h");
    o.check(left <= 1e-6, "left inverse <= 1e-6");
}

void criterion_4(Outcome& o) {
    const PhaseParams pp{32.0, {}};
    for (const std::string name : {"chi", "smooth_a"}) {
        double r[2];
        int k = 0;
        for (std::size_t n : {256u, 512u}) {
            const Grid g = base_grid(n);
            const Field a = name == "chi" ? make_cutoff_chi(g) : make_named_potential(g, name);
            // Both sides of the identity, compared here.
            const Field lhs = apply_T(a, pp);
            r[k++] = lp_norm(lhs - ibp_right_hand_side(a, pp), 2.0) / lp_norm(lhs, 2.0);
        }
        o.detail << name << ": " << num(r[0]) << " -> " << num(r[1]) << "; ";
        o.check(r[1] <= 1e-3, name + " residual <= 1e-3 at n=512");
        o.check(r[1] <= 0.5 * r[0], name + " residual halves");
    }
}

void criterion_5(Outcome& o) {
    const Grid g = base_grid();
    const Field chi = make_cutoff_chi(g);
    const std::vector<double> taus = {8, 16, 32, 64};
    for (auto [ps, q] : {std::pair{4.0, 4.0 / 3.0}, {4.0, 10.0 / 7.0}, {6.0, 1.5}}) {
        const auto inf = measure_T_decay_inf(chi, ps, taus);
        const auto lp = measure_T_decay_lp(chi, ps, q, taus);
        const double s_inf = slope(taus, inf.norm_samples), s_lp = slope(taus, lp.norm_samples);
        const double pred_lp = 1.0 / q - 1.0 - 1.0 / ps;
        o.detail << "(" << num(ps) << "," << num(q) << "): " << num(s_inf) << "/" << num(-1.0 / ps) << ", "
                 << num(s_lp) << "/" << num(pred_lp) << "; ";
        o.check(s_inf <= -1.0 / ps + 0.1, "sup slope for p*=" + num(ps));
        o.check(s_lp <= pred_lp + 0.1, "Lp* slope for q=" + num(q));
    }
}

void criterion_6(Outcome& o) {
    const Grid g = base_grid();
    const Field chi = make_cutoff_chi(g);
    const std::vector<double> taus = {8, 16, 32, 64};
    std::mt19937_64 rng(20240611);
    const Field f = WindowedModes::random(rng, 12, 5.0, 0.8 * g.half_width()).sample(g);
    const double f_inf = lp_norm(f, p_infinity);
    for (const std::string name : {"smooth_a", "smooth_b", "singular"}) {
        const Field q = make_named_potential(g, name);
        const double p = potential_preset(name).p, pst = sobolev_conjugate(p);
        for (int j : {1, 2}) {
            const CgoSetup setup = CgoSetup::make(j, q, {});
            const double s_slope =
                slope(taus, map(taus, [&](double t) { return lp_norm(apply_S(f, j, {t, {}}, q, chi), pst) / f_inf; }));
            const double phi_slope =
                slope(taus, map(taus, [&](double t) { return lp_norm(make_varphi(setup, {t, {}}), pst); }));
            // alpha from the geometric envelope of the term norms.
            std::vector<double> rho;
            for (double t : taus) {
                const auto norms = build_cgo_series(setup, {t, {}}, 1e-6, 20).term_sup_norms;
                double r = 0.0;
                for (std::size_t m = 1; m < norms.size(); ++m)
                    if (norms[m] > 1e-13) r = std::max(r, std::pow(norms[m], 1.0 / static_cast<double>(m)));
                rho.push_back(r);
            }
            const double alpha = -slope(taus, rho);
            const std::string tag = name + " j=" + std::to_string(j);
            o.detail << tag << ": S " << num(s_slope) << ", phi " << num(phi_slope) << ", alpha " << num(alpha)
                     << " (1/p " << num(1.0 / p) << "); ";
            o.check(s_slope <= -0.4, tag + " S slope");
            o.check(phi_slope <= -0.4, tag + " phi slope");
            o.check(alpha > 0.0 && alpha < 1.0 / p, tag + " alpha in (0, 1/p)");
        }
    }
}

void criterion_7(Outcome& o) {
    const std::vector<double> taus = {8, 16, 32, 64};
    for (const std::string name : {"smooth_a", "smooth_b", "singular"}) {
        for (int j : {1, 2}) {
            double res[2];
            int k = 0;
            for (std::size_t n : {256u, 512u}) {
                const Grid g = base_grid(n);
                const Field q = make_named_potential(g, name);
                const CgoSeries s = build_cgo_series(j, {64.0, {}}, q, {}, 1e-6, 20);
                // ||D_j(chi f) - q f||_{L1(Omega)} / ||q||_{L1(Omega)}.
                const Field r = apply_D(make_cutoff_chi(g) * s.f, j, s.pp) - q * s.f;
                res[k++] = lp_norm(r, 1.0, Region::omega()) / lp_norm(q, 1.0, Region::omega());
            }
            const Grid g = base_grid();
            const AlphaFit fit = fit_alpha(CgoSetup::make(j, make_named_potential(g, name), {}), taus, {}, 1e-6, 20);
            // Envelope recomputed from the fitted constants.
            double worst = 0.0;
            for (std::size_t i = 0; i < taus.size(); ++i)
                for (std::size_t m = 1; m < fit.term_norms[i].size(); ++m)
                    if (fit.term_norms[i][m] > 1e-13)
                        worst = std::max(worst, fit.term_norms[i][m] /
                                                    std::pow(fit.c_emp * std::pow(taus[i], -fit.alpha), double(m)));
            const std::string tag = name + " j=" + std::to_string(j);
            o.detail << tag << ": residual " << num(res[0]) << " -> " << num(res[1]) << ", envelope " << num(worst)
                     << "; ";
            o.check(res[1] <= 1e-2, tag + " residual <= 1e-2");
            o.check(res[1] < res[0], tag + " residual decreases");
            o.check(worst <= 2.0, tag + " envelope slack 2");
        }
    }
}

// E e^{-|z|^2}: product of two Fresnel-Gauss integrals.
cplx gaussian_E(cplx z0, double tau) {
    const cplx a(1.0, 2.0 * tau), b(1.0, -2.0 * tau), I(0.0, 1.0);
    const double x0 = z0.real(), y0 = z0.imag();
    return 2.0 * tau / pi * std::sqrt(pi / a) * std::exp(-4.0 * tau * tau * x0 * x0 / a - 2.0 * I * tau * x0 * x0) *
           std::sqrt(pi / b) * std::exp(-4.0 * tau * tau * y0 * y0 / b + 2.0 * I * tau * y0 * y0);
}

void criterion_8(Outcome& o) {
    const Grid g = Grid::make(512, 4.0, 2.0);
    const std::vector<double> taus = {8, 16, 32, 64};
    std::mt19937_64 rng(20240611);
    std::normal_distribution<double> nd;
    double unit = 0.0;
    for (int t = 0; t < 5; ++t) {
        Field f(g);
        for (std::size_t i = 0; i < f.size(); ++i) f[i] = {nd(rng), nd(rng)};
        unit = std::max(unit, std::abs(lp_norm(apply_E(f, taus[t % 4]), 2.0) / lp_norm(f, 2.0) - 1.0));
    }
    const Field gauss = Field::from_function(g, [](cplx z) -> cplx { return std::exp(-std::norm(z)); });
    const auto dist = map(taus, [&](double t) { return lp_norm(apply_E(gauss, t) - gauss, 2.0); });
    double oracle = 0.0;
    {
        const Field e = apply_E(gauss, 8.0);
        for (std::size_t i = 0; i < g.size(); ++i)
            if (std::abs(g.node(i)) <= 1.5) oracle = std::max(oracle, std::abs(e[i] - gaussian_E(g.node(i), 8.0)));
    }
    const double dxi = 2.0 * pi / (static_cast<double>(g.n()) * g.spacing());
    const Field bl = Field::from_function(g, [&](cplx z) -> cplx {
        return std::polar(1.0, 3 * dxi * z.real() - 2 * dxi * z.imag()) + 0.5 * std::polar(1.0, 5 * dxi * z.imag());
    });
    const double bl_slope = slope(taus, map(taus, [&](double t) { return lp_norm(apply_E(bl, t) - bl, 2.0); }));
    o.detail << "unitarity " << num(unit) << ", Gaussian closed form " << num(oracle) << ", band-limited slope "
             << num(bl_slope);
    o.check(unit <= 1e-10, "unitarity");
    o.check(strictly_decreasing(dist), "||Ef - f|| strictly decreasing");
    o.check(oracle <= 1e-8, "E matches the Gaussian closed form");
    o.check(bl_slope <= -1.0 + 0.15, "band-limited slope");
}

void criterion_9(Outcome& o) {
    const Grid g = base_grid();
    const Field q1 = make_named_potential(g, "smooth_a"), q2 = make_named_potential(g, "smooth_b");
    const PairSetup pair = PairSetup::make(q1, q2);
    const double p = 1.5;

    DecayTableOptions d;
    d.taus = {16, 32, 64};
    d.z0s = {{0, 0}, {0.1, -0.1}, {-0.2, 0.15}, {0.25, 0.2}, {-0.1, -0.3}};
    d.max_order = 4;
    d.p = p;
    const DecayTableResult t = decay_table(pair, d);
    // Order groups re-summed from the raw table.
    std::vector<std::vector<double>> rms(d.max_order + 1, std::vector<double>(d.taus.size(), 0.0));
    for (std::size_t m = 0; m <= d.max_order; ++m)
        for (std::size_t ti = 0; ti < d.taus.size(); ++ti) {
            double s = 0.0;
            for (cplx z0 : d.z0s) s += std::norm(t.table.order_sum(m, d.taus[ti], z0));
            rms[m][ti] = std::sqrt(s / static_cast<double>(d.z0s.size()));
        }
    const double s2 = slope(d.taus, rms[2]);
    const double alpha = std::min(t.envelope1.alpha, t.envelope2.alpha);
    o.detail << "order 2 slope " << num(s2) << " (bound " << num(1.0 / p - 0.75 + 0.1) << ")";
    o.check(s2 <= 1.0 / p - 0.75 + 0.1, "order 2 slope");
    // Envelope B_m from the fitted geometric constants of both series.
    for (std::size_t m = 3; m <= d.max_order; ++m) {
        double worst = 0.0;
        for (double tau : d.taus) {
            const double r1 = t.envelope1.c_emp * std::pow(tau, -t.envelope1.alpha);
            const double r2 = t.envelope2.c_emp * std::pow(tau, -t.envelope2.alpha);
            double b = 0.0;
            for (std::size_t k = 0; k <= m; ++k) b += std::pow(r1, double(k)) * std::pow(r2, double(m - k));
            b *= 2.0 * tau / pi * lp_norm(pair.dq, 1.0);
            for (cplx z0 : d.z0s) worst = std::max(worst, std::abs(t.table.order_sum(m, tau, z0)) / b);
        }
        const double sm = slope(d.taus, rms[m]);
        o.detail << ", order " << m << " envelope " << num(worst) << " slope " << num(sm) << " (bound "
                 << num(-(double(m) - 2.0) * alpha + 0.1) << ")";
        o.check(worst <= 2.0, "order " + std::to_string(m) + " envelope");
        o.check(sm <= -(double(m) - 2.0) * alpha + 0.1, "order " + std::to_string(m) + " slope");
    }

    RecoveryOptions r;
    r.max_order = 1;
    r.stride = 4;
    std::vector<double> errs;
    double at64 = 0.0;
    for (double tau : {16.0, 32.0, 64.0}) {
        r.tau = tau;
        const RecoveryResult res = recover_difference(pair, r);
        // Relative l2 error over the stride-4 samples, recomputed.
        double num2 = 0.0, den2 = 0.0;
        for (std::size_t i = 0; i < res.z0_nodes.size(); ++i) {
            num2 += std::norm(res.reconstruction[i] - pair.dq[res.z0_nodes[i]]);
            den2 += std::norm(pair.dq[res.z0_nodes[i]]);
        }
        errs.push_back(std::sqrt(num2 / den2));
        at64 = errs.back();
    }
    BetaChoice half;
    half.width = 2.0 * g.spacing();  // default width is 4h
    const RecoveryResult hr = recover_difference(PairSetup::make(q1, q2, half), r);
    o.detail << "; errors " << num(errs[0]) << ", " << num(errs[1]) << ", " << num(errs[2]) << ", beta/2 "
             << num(hr.reconstruction_error);
    o.check(strictly_decreasing(errs), "reconstruction error decreasing over tau");
    o.check(hr.reconstruction_error < at64, "halving beta width reduces the error");
}

void criterion_10(Outcome& o) {
    double defect[2];
    int k = 0;
    for (std::size_t n : {256u, 512u}) {
        const Grid g = base_grid(n);
        const DnMap m = assemble_dn(make_named_potential(g, "smooth_a"));
        // ||W M - (W M)^T|| / ||W M||, assembled here.
        const auto w = m.arc_weights();
        Eigen::MatrixXcd wm = m.matrix;
        for (Eigen::Index i = 0; i < wm.rows(); ++i) wm.row(i) *= w[static_cast<std::size_t>(i)];
        defect[k++] = (wm - wm.transpose()).norm() / wm.norm();
    }
    const Grid g = base_grid();
    const Field q1 = make_named_potential(g, "smooth_a"), q2 = make_named_potential(g, "smooth_b");
    const DirichletSolver s1(q1), s2(q2);
    std::vector<cplx> g1, g2;
    for (std::size_t b : s1.domain().boundary) {
        g1.push_back(std::exp(g.node(b)));
        g2.push_back(std::exp(cplx(0.0, 0.7) * g.node(b)));
    }
    const Field u1 = s1.solve(g1), u2 = s2.solve(g2);
    const cplx same = alessandrini_pairing(q1, q1, u1, u2);
    const cplx vol = alessandrini_pairing(q1, q2, u1, u2);
    const cplx bnd = boundary_pairing(assemble_dn(q1), assemble_dn(q2), g1, g2);
    const double agree = std::abs(vol + bnd) / std::abs(vol);
    o.detail << "symmetry " << num(defect[0]) << " -> " << num(defect[1]) << ", pairing(q, q) " << std::abs(same)
             << ", volume vs boundary " << num(agree) << " (h " << num(g.spacing()) << ")";
    o.check(defect[0] <= 1e-3, "symmetry <= 1e-3 at n=256");
    o.check(defect[1] <= 0.5 * defect[0] || defect[1] <= 1e-12, "symmetry halves (or at round-off)");
    o.check(same == cplx{}, "pairing vanishes for q1 = q2");
    o.check(agree <= g.spacing(), "volume and boundary forms agree within h");
}

struct Criterion {
    int id;
    const char* title;
    double budget_s;
    void (*run)(Outcome&);
};

const Criterion criteria[] = {
    {1, "inverse power norm closed form", 10, criterion_1},
    {2, "bump and h scalings", 30, criterion_2},
    {3, "Cauchy transform", 30, criterion_3},
    {4, "integration by parts identity", 60, criterion_4},
    {5, "T decay", 120, criterion_5},
    {6, "S and phi decay, alpha_fit", 120, criterion_6},
    {7, "CGO existence", 300, criterion_7},
    {8, "stationary phase", 60, criterion_8},
    {9, "pairing terms and reconstruction", 900, criterion_9},
    {10, "DN map plumbing", 120, criterion_10},
};

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
    int failures = 0;
    for (const auto& c : criteria) {
        if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) continue;
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            c.run(o);
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << " [error: " << e.what() << "]";
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        o.check(secs < c.budget_s, "runtime budget");
        std::printf("criterion %d: %s  %s (%.1f s of %.0f s)  %s\n", c.id, o.pass ? "PASS" : "FAIL", c.title, secs,
                    c.budget_s, o.detail.str().c_str());
        std::fflush(stdout);
        failures += o.pass ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}
