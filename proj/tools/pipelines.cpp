#include "pipelines.hpp"

#include <iomanip>
#include <random>
#include <sstream>

#include "cgo/cauchy.hpp"
#include "cgo/cgo.hpp"
#include "cgo/conjugated.hpp"
#include "cgo/dn_map.hpp"
#include "cgo/field_io.hpp"
#include "cgo/parallel.hpp"
#include "cgo/phase.hpp"
#include "cgo/potentials.hpp"
#include "cgo/random_fields.hpp"
#include "cgo/reconstruct.hpp"
#include "cgo/stationary_phase.hpp"

namespace cgo::cli {

namespace {

std::ostringstream csv() {
    std::ostringstream os;
    os << std::setprecision(17);
    return os;
}

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(4) << v;
    return os.str();
}

Grid main_grid(const Config& c) {
    return Grid::make(static_cast<std::size_t>(c.get_int("grid.n")), c.get_double("grid.L"), c.get_double("grid.R"));
}

Grid fine_grid(const Config& c) {
    return Grid::make(static_cast<std::size_t>(c.get_int("refine.n")), c.get_double("grid.L"), c.get_double("grid.R"));
}

BetaChoice beta_choice(const Config& c) {
    BetaChoice b;
    const std::string mode = c.get_string("beta.mode");
    if (mode == "zero") b.mode = BetaChoice::Mode::zero;
    else if (mode == "smoothed_cauchy") b.mode = BetaChoice::Mode::smoothed_cauchy;
    else throw Error(ErrorCode::config_error, "beta.mode must be zero or smoothed_cauchy");
    b.width = c.get_double("beta.width");
    return b;
}

std::size_t jobs(const Config& c) { return resolve_jobs(static_cast<std::size_t>(std::max(0L, c.get_int("jobs")))); }

std::vector<double> nonempty(const Config& c, const std::string& key) {
    auto v = c.get_doubles(key);
    if (v.empty()) throw Error(ErrorCode::config_error, key + " must not be empty");
    return v;
}

double sobolev_conjugate(double p) { return 1.0 / (1.0 / p - 0.5); }

void add_decay_csv(Report& r, const std::string& name, const std::vector<DecayReport>& reports) {
    auto os = csv();
    os << "label,tau,norm,fitted_exponent,predicted_exponent\n";
    for (const auto& d : reports)
        for (std::size_t i = 0; i < d.parameter_values.size(); ++i)
            os << '"' << d.label << "\"," << d.parameter_values[i] << ',' << d.norm_samples[i] << ','
               << d.fitted_exponent << ',' << d.predicted_exponent << '\n';
    r.add_file(name, os.str());
}

// Log-log plot of every label in a decay CSV.
std::string decay_plot_script(const std::string& csv_name, const std::string& title) {
    std::ostringstream os;
    os << "import csv\nimport collections\nimport matplotlib\nmatplotlib.use('Agg')\n"
          "import matplotlib.pyplot as plt\n\n"
          "series = collections.defaultdict(list)\n"
          "with open('" << csv_name << "') as f:\n"
          "    for row in csv.DictReader(f):\n"
          "        series[row['label']].append((float(row['tau']), float(row['norm'])))\n\n"
          "fig, ax = plt.subplots(figsize=(7, 5))\n"
          "for label, pts in series.items():\n"
          "    pts.sort()\n"
          "    ax.loglog([p[0] for p in pts], [max(p[1], 1e-300) for p in pts], 'o-', label=label)\n"
          "ax.set_xlabel('tau')\nax.set_ylabel('norm')\nax.set_title('" << title << "')\n"
          "ax.legend(fontsize=7)\nfig.tight_layout()\nfig.savefig('" << csv_name.substr(0, csv_name.size() - 4)
       << ".png', dpi=150)\n";
    return os.str();
}

void add_decay_outputs(Report& r, const std::string& stem, const std::vector<DecayReport>& reports,
                       const std::string& title) {
    add_decay_csv(r, stem + ".csv", reports);
    r.add_file("plot_" + stem + ".py", decay_plot_script(stem + ".csv", title));
}

}  // namespace

Report run_appendix_checks(const Config& c) {
    Report r;
    r.command = "appendix-checks";
    const auto as = nonempty(c, "appendix.a");
    const auto ps = nonempty(c, "appendix.p");
    const auto taus = nonempty(c, "appendix.tau");
    for (double a : as)
        for (double p : ps)
            if (!(a * p > 2.0))
                throw Error(ErrorCode::config_error,
                            "appendix lattice point a = " + fmt(a) + ", p = " + fmt(p) + " violates p > 2/a");

    std::vector<InversePowerCheck> rows;
    double worst = 0.0;
    for (double a : as)
        for (double p : ps)
            for (double tau : taus) {
                rows.push_back(inverse_power_norm_check(a, p, tau, c.get_double("grid.L")));
                worst = std::max(worst, rows.back().rel_err());
            }
    std::ostringstream inv;
    write_inverse_power_csv(inv, rows);
    r.add_file("inverse_power.csv", inv.str());
    r.expect("inverse power norm max relative error", worst, "<=", c.get_double("appendix.rel_tol"));

    const auto ladder = nonempty(c, "appendix.scaling_tau");
    const double tol = c.get_double("appendix.slope_tol");
    std::vector<DecayReport> reports;
    auto scaling = [&](const std::string& label, double predicted, auto norm_at) {
        std::vector<double> v;
        for (double tau : ladder) v.push_back(norm_at(tau));
        reports.push_back(make_decay_report(label, ladder, v, predicted));
        const auto& d = reports.back();
        r.expect(label + " |fitted - predicted|", std::abs(d.fitted_exponent - predicted), "<=", tol,
                 "fitted " + fmt(d.fitted_exponent) + ", predicted " + fmt(predicted));
    };
    const cplx v{0.6, 0.8};
    for (double p : c.get_doubles("appendix.bump_p")) {
        scaling("psi_tau L^" + fmt(p), -1.0 / p, [&](double t) { return bump_norm_plane(p, t); });
        scaling("v.grad psi_tau L^" + fmt(p), 0.5 - 1.0 / p,
                [&](double t) { return bump_directional_norm_plane(p, t, v); });
    }
    for (double p : c.get_doubles("appendix.h_p"))
        scaling("h L^" + fmt(p), 0.5 - 1.0 / p, [&](double t) { return h_norm_plane(p, t); });
    for (double p : c.get_doubles("appendix.grad_h_p"))
        scaling("v.grad h L^" + fmt(p), 1.0 - 1.0 / p, [&](double t) { return directional_h_norm_plane(p, t, v); });
    add_decay_outputs(r, "appendix_scaling", reports, "bump and h norm scalings");
    return r;
}

Report run_cauchy_checks(const Config& c) {
    Report r;
    r.command = "cauchy-checks";
    const std::size_t n = static_cast<std::size_t>(c.get_int("grid.n"));
    const double disc_L = c.get_double("cauchy.disc_L");
    const double a = c.get_double("cauchy.disc_radius");

    // dbar^{-1} of the disc indicator: conj(z) inside, a^2 / z outside.
    auto disc_error = [&](std::size_t nn, Field* profile) {
        const Grid g = Grid::make(nn, disc_L, 0.5 * disc_L);
        const Field f = Field::from_function(g, [&](cplx z) -> cplx { return std::abs(z) <= a ? 1.0 : 0.0; });
        const Field u = cauchy_dbar_inv(f);
        double worst = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) {
            const cplx z = g.node(i);
            const cplx exact = std::abs(z) <= a ? std::conj(z) : a * a / z;
            worst = std::max(worst, std::abs(u[i] - exact));
        }
        if (profile) *profile = u;
        return std::pair{worst, g.spacing()};
    };
    Field profile(Grid::make(n, disc_L, 0.5 * disc_L));
    const auto [err, h] = disc_error(n, &profile);
    const auto [err_coarse, h_coarse] = disc_error(n / 2, nullptr);
    r.expect("disc transform max error / h", err / h, "<=", 5.0, "error " + fmt(err) + ", h " + fmt(h));
    r.expect("disc transform error refinement ratio", err / err_coarse, "<", 1.0,
             "n/2: " + fmt(err_coarse) + ", n: " + fmt(err));
    {
        auto os = csv();
        os << "x,re,im,exact_re,exact_im\n";
        const Grid& g = profile.grid();
        for (std::size_t j = 0; j < g.n(); ++j) {
            const cplx z = g.node(j, g.n() / 2);
            const cplx exact = std::abs(z) <= a ? std::conj(z) : a * a / z;
            const cplx v = profile.at(j, g.n() / 2);
            os << z.real() << ',' << v.real() << ',' << v.imag() << ',' << exact.real() << ',' << exact.imag() << '\n';
        }
        r.add_file("disc_profile.csv", os.str());
        r.add_file("plot_disc_profile.py",
                   "import csv\nimport matplotlib\nmatplotlib.use('Agg')\nimport matplotlib.pyplot as plt\n\n"
                   "rows = list(csv.DictReader(open('disc_profile.csv')))\n"
                   "x = [float(r['x']) for r in rows]\n"
                   "fig, ax = plt.subplots()\n"
                   "ax.plot(x, [float(r['re']) for r in rows], label='computed re')\n"
                   "ax.plot(x, [float(r['exact_re']) for r in rows], '--', label='exact re')\n"
                   "ax.set_xlabel('x')\nax.legend()\nfig.savefig('disc_profile.png', dpi=150)\n");
    }

    const Grid g = main_grid(c);
    std::mt19937_64 rng(static_cast<std::uint64_t>(c.get_int("seed")));
    const auto trials = static_cast<std::size_t>(c.get_int("cauchy.trials"));
    double worst_left = 0.0, worst_beurling = 0.0, worst_pad = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        const Field f = WindowedModes::random(rng, 8, 10.0, g.omega_radius()).sample(g);
        worst_left = std::max(worst_left, left_inverse_residual(f));
        const Field gb = BumpSum::random(rng, 5, g.omega_radius()).sample(g);
        const Field lhs = beurling(dbar(gb));
        worst_beurling = std::max(worst_beurling, lp_norm(lhs - d(gb), 2.0) / lp_norm(d(gb), 2.0));
        const Field p2 = cauchy_dbar_inv(f);
        const Field p4 = cauchy_dbar_inv_padded(f, 4);
        worst_pad = std::max(worst_pad, lp_norm(p2 - p4, 2.0) / lp_norm(p2, 2.0));
    }
    r.expect("left inverse dbar(chi dbar^-1 f) = f, relative L2(Omega)", worst_left, "<=",
             c.get_double("cauchy.left_inverse_tol"));
    r.expect("Beurling identity Pi dbar g = d g, relative L2", worst_beurling, "<=", 1e-5);
    r.expect("2n vs 4n padding, relative L2", worst_pad, "<=", 1e-12);
    const Field zero(g);
    r.expect("zero field transform sup", lp_norm(cauchy_dbar_inv(zero), p_infinity) + lp_norm(beurling(zero), p_infinity),
             "<=", 0.0);

    for (double p : c.get_doubles("cauchy.bounded_p")) {
        const auto rep = bounded_map_check(g, p, trials, static_cast<std::uint64_t>(c.get_int("seed")));
        r.info("W1p bound ratio p=" + fmt(p) + " (n)", rep.max_ratio_coarse);
        r.expect("W1p bound ratio p=" + fmt(p) + " change under refinement", rep.relative_change, "<=", 0.1,
                 "n: " + fmt(rep.max_ratio_coarse) + ", 2n: " + fmt(rep.max_ratio_fine));
    }
    return r;
}

Report run_decay(const Config& c) {
    Report r;
    r.command = "decay";
    const Grid g = main_grid(c);
    const auto taus = nonempty(c, "decay.tau");
    const double tol = c.get_double("decay.slope_tol");
    const Field chi = make_cutoff_chi(g);
    std::vector<DecayReport> reports;

    // Hypothesis check on the configured pairs, then a known violation.
    std::vector<std::pair<double, double>> pairs;
    for (const auto& item : c.get_complexes("decay.pairs")) {
        try {
            check_T_lp_hypothesis(item.real(), item.imag());
        } catch (const Error& e) {
            throw Error(ErrorCode::config_error, std::string("decay.pairs: ") + e.what());
        }
        pairs.emplace_back(item.real(), item.imag());
    }
    bool rejected = false;
    try {
        check_T_lp_hypothesis(4.0, 2.0);
    } catch (const Error& e) {
        rejected = e.code() == ErrorCode::hypothesis_violation;
    }
    r.require("(p*, q) = (4, 2) rejected as hypothesis-violating", rejected);

    {
        const double tau = c.get_double("decay.ibp_tau");
        const Grid gf = fine_grid(c);
        for (const std::string name : {"chi", "smooth_a"}) {
            auto a_on = [&](const Grid& grid) {
                return name == "chi" ? make_cutoff_chi(grid) : make_named_potential(grid, name);
            };
            const double coarse = ibp_residual(a_on(g), {tau, {}});
            const double fine = ibp_residual(a_on(gf), {tau, {}});
            r.expect("integration by parts residual at refine.n, a = " + name, fine, "<=", c.get_double("decay.ibp_tol"));
            r.expect("integration by parts refinement ratio, a = " + name, fine / coarse, "<=", 0.5,
                     "n: " + fmt(coarse) + ", refine.n: " + fmt(fine));
        }
    }

    for (const auto& [ps, q] : pairs) {
        reports.push_back(measure_T_decay_inf(chi, ps, taus));
        const auto& d_inf = reports.back();
        r.expect("T chi L^inf slope - (-1/p*), p*=" + fmt(ps), d_inf.fitted_exponent - d_inf.predicted_exponent, "<=",
                 tol, "fitted " + fmt(d_inf.fitted_exponent));
        reports.push_back(measure_T_decay_lp(chi, ps, q, taus));
        const auto& d_lp = reports.back();
        r.expect("T chi L^p* slope - predicted, (p*, q)=(" + fmt(ps) + ", " + fmt(q) + ")",
                 d_lp.fitted_exponent - d_lp.predicted_exponent, "<=", tol, "fitted " + fmt(d_lp.fitted_exponent));
    }

    const std::string qname = c.get_string("decay.q");
    const Field q = make_named_potential(g, qname);
    const double p = potential_preset(qname.substr(0, qname.find('+'))).p;
    const double pst = sobolev_conjugate(p);
    std::mt19937_64 rng(static_cast<std::uint64_t>(c.get_int("seed")));
    const Field f = WindowedModes::random(rng, 12, c.get_double("decay.field_max_frequency"), 0.8 * g.half_width())
                        .sample(g);
    const double f_inf = lp_norm(f, p_infinity);
    for (int j : {1, 2}) {
        const std::string side = "j=" + std::to_string(j);
        const CgoSetup setup = CgoSetup::make(j, q, beta_choice(c));
        std::vector<double> s_norm, phi_pst, phi_inf, s_zero;
        const Field zero(g);
        for (double tau : taus) {
            const PhaseParams pp{tau, {}};
            s_norm.push_back(lp_norm(apply_S(f, j, pp, q, chi), pst) / f_inf);
            const Field phi = make_varphi(setup, pp);
            phi_pst.push_back(lp_norm(phi, pst));
            phi_inf.push_back(lp_norm(phi, p_infinity));
            s_zero.push_back(lp_norm(apply_S(f, j, pp, zero, chi), pst));
        }
        const AlphaFit af = fit_alpha(setup, taus, {}, c.get_double("cgo.tol"),
                                      static_cast<std::size_t>(c.get_int("cgo.m_max")));
        reports.push_back(make_decay_report("S f L^p* " + side, taus, s_norm, -0.5));
        r.expect("S f L^p* slope " + side, reports.back().fitted_exponent, "<=", -0.5 + tol);
        reports.push_back(make_decay_report("phi L^p* " + side, taus, phi_pst, -0.5));
        r.expect("phi L^p* slope " + side, reports.back().fitted_exponent, "<=", -0.5 + tol);
        reports.push_back(make_decay_report("phi L^inf " + side, taus, phi_inf, -af.alpha));
        r.expect("phi L^inf slope + alpha_fit " + side, reports.back().fitted_exponent + af.alpha, "<=", tol);
        r.expect("alpha_fit " + side + " > 0", af.alpha, ">", 0.0);
        r.expect("alpha_fit " + side + " < 1/p", af.alpha, "<", 1.0 / p, "p = " + fmt(p));
        const DecayReport zero_report = make_decay_report("S f, q = 0 " + side, taus, s_zero, -0.5);
        r.require("q = 0 decay flagged degenerate " + side, zero_report.degenerate);
    }
    add_decay_outputs(r, "decay", reports, "T, S and phi decay");
    return r;
}

Report run_cgo(const Config& c) {
    Report r;
    r.command = "cgo";
    const Grid g = main_grid(c);
    const Grid gf = fine_grid(c);
    const double tau = c.get_double("cgo.tau");
    const double tol = c.get_double("cgo.tol");
    const auto m_max = static_cast<std::size_t>(c.get_int("cgo.m_max"));
    const auto alpha_taus = nonempty(c, "cgo.alpha_tau");
    const double slack = c.get_double("cgo.envelope_slack");
    const BetaChoice beta = beta_choice(c);

    {
        const PhaseParams pp{std::min(32.0, max_nyquist_tau(gf)), {}};
        const Field em = quadratic_phase(gf, pp, -1);
        const Field chi = make_cutoff_chi(gf);
        const double rel = lp_norm(apply_D(chi * em, 1, pp), 2.0, Region::omega()) / lp_norm(em, 2.0, Region::omega());
        r.expect("D_1 e^- relative L2(Omega) at refine.n, tau=" + fmt(pp.tau), rel, "<=", 1e-6);
    }

    auto norms = csv();
    norms << "q,side,n,m,sup_norm\n";
    for (const std::string& name : c.get_strings("cgo.q")) {
        const double p = potential_preset(name.substr(0, name.find('+'))).p;
        for (int j : {1, 2}) {
            const std::string tag = name + " j=" + std::to_string(j);
            double res[2] = {0.0, 0.0};
            int idx = 0;
            for (const Grid* grid : {&g, &gf}) {
                const Field q = make_named_potential(*grid, name);
                const CgoSetup setup = CgoSetup::make(j, q, beta);
                const CgoSeries s = build_cgo_series(setup, {tau, {}}, tol, m_max);
                res[idx++] = cgo_residual(s, q);
                for (std::size_t m = 0; m < s.term_sup_norms.size(); ++m)
                    norms << name << ',' << j << ',' << grid->n() << ',' << m << ',' << s.term_sup_norms[m] << '\n';
                if (grid == &g) {
                    r.require(tag + " series converged to tol", s.converged, "terms " + std::to_string(s.order()));
                    r.expect(tag + " fixed-point defect", cgo_fixed_point_defect(s, q), "<=", 10.0 * tol);
                }
            }
            r.info(tag + " residual at n", res[0]);
            r.expect(tag + " residual at refine.n", res[1], "<=", c.get_double("cgo.residual_tol"));
            r.expect(tag + " residual refinement ratio", res[1] / res[0], "<", 1.0);

            const Field q = make_named_potential(g, name);
            const AlphaFit af = fit_alpha(CgoSetup::make(j, q, beta), alpha_taus, {}, tol, m_max);
            r.expect(tag + " envelope worst ratio", af.worst_envelope_ratio, "<=", slack,
                     "C " + fmt(af.c_emp) + ", alpha " + fmt(af.alpha));
            r.expect(tag + " alpha_fit > 0", af.alpha, ">", 0.0);
            r.expect(tag + " alpha_fit < 1/p", af.alpha, "<", 1.0 / p, "p = " + fmt(p));
        }
    }
    r.add_file("cgo_term_norms.csv", norms.str());
    r.add_file("plot_cgo_term_norms.py",
               "import csv\nimport collections\nimport matplotlib\nmatplotlib.use('Agg')\n"
               "import matplotlib.pyplot as plt\n\n"
               "series = collections.defaultdict(list)\n"
               "for row in csv.DictReader(open('cgo_term_norms.csv')):\n"
               "    series[(row['q'], row['side'], row['n'])].append((int(row['m']), float(row['sup_norm'])))\n"
               "fig, ax = plt.subplots()\n"
               "for key, pts in series.items():\n"
               "    ax.semilogy([p[0] for p in pts], [max(p[1], 1e-300) for p in pts], 'o-', label=' '.join(key))\n"
               "ax.set_xlabel('m')\nax.set_ylabel('sup norm of F_m')\nax.legend(fontsize=6)\n"
               "fig.savefig('cgo_term_norms.png', dpi=150)\n");

    // Below the contraction threshold the builder must refuse.
    bool refused = false;
    try {
        const Field q = make_named_potential(g, "smooth_a") * cplx(40.0);
        build_cgo_series(1, {2.0, {}}, q, beta, tol, m_max);
    } catch (const Error& e) {
        refused = e.code() == ErrorCode::tau_too_small;
    }
    r.require("tau_too_small surfaced for 40 x smooth_a at tau = 2", refused);
    return r;
}

Report run_reconstruct(const Config& c) {
    Report r;
    r.command = "reconstruct";
    const std::size_t nj = jobs(c);

    // Stationary phase on its own large frame.
    {
        const Grid gs = Grid::make(static_cast<std::size_t>(c.get_int("stationary.n")), c.get_double("stationary.L"),
                                   0.5 * c.get_double("stationary.L"));
        const auto taus = nonempty(c, "stationary.tau");
        std::mt19937_64 rng(static_cast<std::uint64_t>(c.get_int("seed")));
        std::normal_distribution<double> normal;
        double worst_unit = 0.0;
        for (int t = 0; t < 10; ++t) {
            Field f(gs);
            for (std::size_t i = 0; i < f.size(); ++i) f[i] = cplx(normal(rng), normal(rng));
            const double ratio = lp_norm(apply_E(f, taus.front()), 2.0) / lp_norm(f, 2.0);
            worst_unit = std::max(worst_unit, std::abs(ratio - 1.0));
        }
        r.expect("E unitarity |ratio - 1|", worst_unit, "<=", 1e-10);
        const Field gauss = Field::from_function(gs, [](cplx z) -> cplx { return std::exp(-std::norm(z)); });
        const DecayReport conv = convergence_E(gauss, taus);
        r.require("||E f - f|| strictly decreasing, Gaussian f", conv.strictly_decreasing());
        // Trigonometric polynomial on the grid's own frequency lattice.
        const double dxi = 2.0 * pi / (static_cast<double>(gs.n()) * gs.spacing());
        const Field bl = Field::from_function(gs, [&](cplx z) -> cplx {
            return std::polar(1.0, 3 * dxi * z.real() - 2 * dxi * z.imag()) + 0.5 * std::polar(1.0, 5 * dxi * z.imag());
        });
        const DecayReport conv_bl = convergence_E(bl, taus);
        r.expect("||E f - f|| slope, band-limited f", conv_bl.fitted_exponent, "<=", -1.0 + 0.15);
        const double semi = lp_norm(apply_E(apply_E(gauss, taus[0]), taus[1]) -
                                        apply_E(gauss, 1.0 / (1.0 / taus[0] + 1.0 / taus[1])),
                                    2.0) /
                            lp_norm(gauss, 2.0);
        r.expect("E semigroup in 1/tau", semi, "<=", 1e-12);
        const double adj = lp_norm(apply_E(apply_E(gauss, taus[0]), -taus[0]) - gauss, 2.0) / lp_norm(gauss, 2.0);
        r.expect("E(-tau) E(tau) = identity", adj, "<=", 1e-12);
        add_decay_outputs(r, "stationary_phase", {conv, conv_bl}, "||E f - f||");

        const Grid g = main_grid(c);
        std::vector<DecayReport> singles;
        for (const std::string name : {"smooth_a", "disc"}) {
            singles.push_back(recover_single(make_named_potential(g, name), nonempty(c, "reconstruct.single_tau")));
            singles.back().label = "single " + name;
            r.require("single recovery error decreasing, " + name, singles.back().strictly_decreasing());
        }
        add_decay_outputs(r, "recover_single", singles, "||E q - q|| / ||q||");
    }

    const Grid g = main_grid(c);
    const Field q1 = make_named_potential(g, c.get_string("reconstruct.q1"));
    const Field q2 = make_named_potential(g, c.get_string("reconstruct.q2"));
    const PairSetup pair = PairSetup::make(q1, q2, beta_choice(c));
    const auto K = static_cast<std::size_t>(c.get_int("reconstruct.K"));
    const double slack = c.get_double("cgo.envelope_slack");
    const double p = c.get_double("reconstruct.p");

    DecayTableOptions dopt;
    dopt.taus = nonempty(c, "reconstruct.decay_tau");
    dopt.z0s = c.get_complexes("reconstruct.decay_z0");
    dopt.max_order = K;
    dopt.p = p;
    dopt.tol = c.get_double("cgo.tol");
    dopt.jobs = nj;
    const DecayTableResult dt = decay_table(pair, dopt);
    {
        std::ostringstream os;
        dt.table.write_csv(os);
        r.add_file("term_table.csv", os.str());
    }
    add_decay_outputs(r, "order_decay", dt.per_order, "order-grouped terms");
    if (K >= 2) {
        const auto& d2 = dt.per_order[2];
        r.expect("order 2 slope", d2.fitted_exponent, "<=", 1.0 / p - 0.75 + 0.1,
                 "predicted " + fmt(d2.predicted_exponent));
    }
    for (std::size_t m = 3; m <= K; ++m) {
        r.expect("order " + std::to_string(m) + " envelope ratio", dt.envelope_ratio[m - 3], "<=", slack);
        r.expect("order " + std::to_string(m) + " slope - predicted",
                 dt.per_order[m].fitted_exponent - dt.per_order[m].predicted_exponent, "<=", 0.1,
                 "fitted " + fmt(dt.per_order[m].fitted_exponent));
    }

    const auto rtaus = nonempty(c, "reconstruct.tau");
    auto errs = csv();
    errs << "tau,beta_width_scale,reconstruction_error,remainder_norm,total_error\n";
    std::vector<double> rec;
    for (std::size_t i = 0; i < rtaus.size(); ++i) {
        RecoveryOptions o;
        o.tau = rtaus[i];
        o.max_order = i + 1 == rtaus.size() ? K : 1;
        o.stride = static_cast<std::size_t>(c.get_int("reconstruct.stride"));
        o.tol = c.get_double("cgo.tol");
        o.jobs = nj;
        const RecoveryResult res = recover_difference(pair, o);
        rec.push_back(res.reconstruction_error);
        errs << o.tau << ",1," << res.reconstruction_error << ',' << res.remainder_norm << ',' << res.total_error
             << '\n';
        if (i + 1 == rtaus.size()) {
            r.info("remainder norm (orders 2..K) at tau=" + fmt(o.tau), res.remainder_norm);
            std::ostringstream fs;
            write_field_csv(fs, res.as_field(g, res.reconstruction));
            r.add_file("reconstruction.csv", fs.str());
            std::ostringstream ft;
            write_field_csv(ft, res.as_field(g, res.target));
            r.add_file("target.csv", ft.str());

            BetaChoice base = beta_choice(c);
            BetaChoice half = base;
            // width 0 selects 4h; halve explicitly.
            half.width = (base.width > 0.0 ? base.width : 4.0 * g.spacing()) * 0.5;
            const PairSetup halved = PairSetup::make(q1, q2, half);
            o.max_order = 1;
            const RecoveryResult res_half = recover_difference(halved, o);
            errs << o.tau << ",0.5," << res_half.reconstruction_error << ",,\n";
            r.expect("reconstruction error after halving beta width at tau=" + fmt(o.tau),
                     res_half.reconstruction_error, "<", res.reconstruction_error,
                     "before " + fmt(res.reconstruction_error));
        }
    }
    bool decreasing = true;
    for (std::size_t i = 1; i < rec.size(); ++i) decreasing = decreasing && rec[i] < rec[i - 1];
    r.require("reconstruction error strictly decreasing over tau", decreasing);
    r.add_file("reconstruction_errors.csv", errs.str());
    r.add_file("plot_reconstruction.py",
               "import csv\nimport matplotlib\nmatplotlib.use('Agg')\nimport matplotlib.pyplot as plt\n"
               "import numpy as np\n\n"
               "def grid(name):\n"
               "    rows = np.loadtxt(name, delimiter=',', skiprows=1)\n"
               "    n = int(round(np.sqrt(len(rows))))\n"
               "    return rows[:, 2].reshape(n, n), rows[:, 0].min(), rows[:, 0].max()\n\n"
               "rec, lo, hi = grid('reconstruction.csv')\ntgt, _, _ = grid('target.csv')\n"
               "fig, axes = plt.subplots(1, 2, figsize=(10, 4))\n"
               "for ax, data, title in zip(axes, (tgt, rec), ('q1 - q2 (samples)', 'k + l <= 1 block')):\n"
               "    im = ax.imshow(data, origin='lower', extent=(lo, hi, lo, hi))\n"
               "    ax.set_title(title)\n    fig.colorbar(im, ax=ax)\n"
               "fig.savefig('reconstruction.png', dpi=150)\n");

    // Forward problem and DN plumbing.
    {
        const Grid gf = fine_grid(c);
        const DnMap coarse = assemble_dn(q1, nj);
        const DnMap fine = assemble_dn(make_named_potential(gf, c.get_string("reconstruct.q1")), nj);
        const double d0 = coarse.symmetry_defect(), d1 = fine.symmetry_defect();
        r.expect("DN symmetry defect at n", d0, "<=", 1e-3);
        r.require("DN symmetry defect halves at refine.n (or sits at round-off)", d1 <= 0.5 * d0 || d1 <= 1e-12,
                  "n: " + fmt(d0) + ", refine.n: " + fmt(d1));
        std::vector<cplx> g1, g2;
        for (std::size_t i : coarse.boundary_nodes) {
            g1.push_back(std::exp(g.node(i)));
            g2.push_back(std::exp(cplx(0.0, 0.7) * g.node(i)));
        }
        const DirichletSolver s1(q1), s2(q2);
        const Field u1 = s1.solve(g1), u2 = s2.solve(g2);
        r.expect("Dirichlet solve residual", std::max(s1.residual(u1), s2.residual(u2)), "<=", 1e-10);
        r.expect("pairing with q1 = q2", std::abs(alessandrini_pairing(q1, q1, u1, u2)), "<=", 0.0);
        const cplx vol = alessandrini_pairing(q1, q2, u1, u2);
        const cplx bnd = boundary_pairing(coarse, assemble_dn(q2, nj), g1, g2);
        r.expect("volume vs boundary pairing, relative", std::abs(vol + bnd) / std::abs(vol), "<=", g.spacing());
    }
    return r;
}

}  // namespace cgo::cli
