#include "cgo/reconstruct.hpp"

#include <iomanip>
#include <map>
#include <sstream>

#include "cgo/cauchy.hpp"
#include "cgo/kernels.hpp"
#include "cgo/parallel.hpp"
#include "cgo/phase.hpp"
#include "cgo/stationary_phase.hpp"

namespace cgo {

namespace {

double rms(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return v.empty() ? 0.0 : std::sqrt(s / static_cast<double>(v.size()));
}

double l2(const std::vector<cplx>& v) {
    double s = 0.0;
    for (cplx x : v) s += std::norm(x);
    return std::sqrt(s);
}

double relative(double num, double den) { return den > 0.0 ? num / den : num; }

}  // namespace

cplx term_integral(std::size_t k, std::size_t l, const CgoSeries& s1, const CgoSeries& s2, const Field& dq) {
    if (k > s1.order() || l > s2.order()) {
        std::ostringstream why;
        why << "term (" << k << ", " << l << ") beyond series orders (" << s1.order() << ", " << s2.order() << ")";
        throw Error(ErrorCode::order_out_of_range, why.str());
    }
    if (s1.pp.tau != s2.pp.tau || s1.pp.z0 != s2.pp.z0)
        throw Error(ErrorCode::config_error, "term integral needs both series at the same (tau, z0)");
    const Grid& g = dq.grid();
    const PhaseParams& pp = s1.pp;
    const Field& a = s1.terms[k];
    const Field& b = s2.terms[l];
    cplx acc{};
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (!g.in_omega(i) || dq[i] == 0.0) continue;
        acc += dq[i] * quadratic_phase_at(g.node(i), pp, +1) * a[i] * b[i];
    }
    return acc * (2.0 * pp.tau / pi * g.cell_area());
}

cplx full_term_sum(const CgoSeries& s1, const CgoSeries& s2, const Field& dq) {
    cplx acc{};
    for (std::size_t k = 0; k <= s1.order(); ++k)
        for (std::size_t l = 0; l <= s2.order(); ++l) acc += term_integral(k, l, s1, s2, dq);
    return acc;
}

cplx TermTable::order_sum(std::size_t order, double tau, cplx z0) const {
    cplx acc{};
    for (const auto& e : entries)
        if (e.k + e.l == order && e.tau == tau && e.z0 == z0) acc += e.value;
    return acc;
}

void TermTable::write_csv(std::ostream& os) const {
    os << "k,l,tau,z0_re,z0_im,value_re,value_im\n" << std::setprecision(17);
    for (const auto& e : entries)
        os << e.k << ',' << e.l << ',' << e.tau << ',' << e.z0.real() << ',' << e.z0.imag() << ',' << e.value.real()
           << ',' << e.value.imag() << '\n';
}

PairSetup PairSetup::make(const Field& q1, const Field& q2, const BetaChoice& beta) {
    require_same_grid(q1, q2);
    return {CgoSetup::make(1, q1, beta), CgoSetup::make(2, q2, beta), q1 - q2};
}

DecayTableResult decay_table(const PairSetup& setup, const DecayTableOptions& opt) {
    if (opt.taus.size() < 2) throw Error(ErrorCode::config_error, "decay table needs at least two tau values");
    if (opt.z0s.empty()) throw Error(ErrorCode::config_error, "decay table needs z0 samples");
    const std::size_t K = opt.max_order;
    const std::size_t nt = opt.taus.size(), nz = opt.z0s.size();

    // values[t][z][k][l], norms1/2[t][z][m]
    std::vector<std::vector<std::vector<std::vector<cplx>>>> values(
        nt, std::vector<std::vector<std::vector<cplx>>>(nz));
    std::vector<std::vector<std::vector<double>>> norms1(nt, std::vector<std::vector<double>>(nz)), norms2 = norms1;
    parallel_for(nt * nz, opt.jobs, [&](std::size_t item) {
        const std::size_t t = item / nz, z = item % nz;
        const PhaseParams pp{opt.taus[t], opt.z0s[z]};
        const CgoSeries s1 = build_cgo_series(setup.side1, pp, opt.tol, K);
        const CgoSeries s2 = build_cgo_series(setup.side2, pp, opt.tol, K);
        auto& v = values[t][z];
        v.assign(K + 1, std::vector<cplx>(K + 1, cplx{}));
        for (std::size_t k = 0; k <= std::min(K, s1.order()); ++k)
            for (std::size_t l = 0; l + k <= K && l <= s2.order(); ++l) v[k][l] = term_integral(k, l, s1, s2, setup.dq);
        norms1[t][z] = s1.term_sup_norms;
        norms2[t][z] = s2.term_sup_norms;
    });

    DecayTableResult out;
    for (std::size_t t = 0; t < nt; ++t)
        for (std::size_t z = 0; z < nz; ++z)
            for (std::size_t k = 0; k <= K; ++k)
                for (std::size_t l = 0; l + k <= K; ++l)
                    out.table.entries.push_back({k, l, opt.taus[t], opt.z0s[z], values[t][z][k][l]});

    // Elementwise max over z0 of the term norms, per tau.
    auto pooled = [&](const std::vector<std::vector<std::vector<double>>>& norms) {
        std::vector<std::vector<double>> out_norms(nt);
        for (std::size_t t = 0; t < nt; ++t)
            for (const auto& list : norms[t]) {
                if (out_norms[t].size() < list.size()) out_norms[t].resize(list.size(), 0.0);
                for (std::size_t m = 0; m < list.size(); ++m) out_norms[t][m] = std::max(out_norms[t][m], list[m]);
            }
        return out_norms;
    };
    out.envelope1 = fit_envelope(opt.taus, pooled(norms1));
    out.envelope2 = fit_envelope(opt.taus, pooled(norms2));
    const double alpha = std::min(out.envelope1.alpha, out.envelope2.alpha);
    const double dq_l1 = lp_norm(setup.dq, 1.0, Region::omega());

    for (std::size_t m = 0; m <= K; ++m) {
        std::vector<double> samples;
        double worst = 0.0;
        for (std::size_t t = 0; t < nt; ++t) {
            const double tau = opt.taus[t];
            const double r1 = out.envelope1.c_emp * std::pow(tau, -out.envelope1.alpha);
            const double r2 = out.envelope2.c_emp * std::pow(tau, -out.envelope2.alpha);
            double bound = 0.0;
            for (std::size_t k = 0; k <= m; ++k)
                bound += std::pow(r1, static_cast<double>(k)) * std::pow(r2, static_cast<double>(m - k));
            bound *= 2.0 * tau / pi * dq_l1;
            std::vector<double> mags;
            for (std::size_t z = 0; z < nz; ++z) {
                cplx group{};
                for (std::size_t k = 0; k <= m; ++k) group += values[t][z][k][m - k];
                mags.push_back(std::abs(group));
                if (m >= 3 && bound > 0.0) worst = std::max(worst, std::abs(group) / bound);
            }
            samples.push_back(rms(mags));
        }
        double predicted = 0.0;
        if (m == 2) predicted = 1.0 / opt.p - 0.75;
        if (m >= 3) predicted = -static_cast<double>(m - 2) * alpha;
        out.per_order.push_back(make_decay_report("order " + std::to_string(m), opt.taus, samples, predicted));
        if (m >= 3) out.envelope_ratio.push_back(worst);
    }
    return out;
}

Field RecoveryResult::as_field(const Grid& grid, const std::vector<cplx>& values) const {
    Field f(grid);
    for (std::size_t i = 0; i < z0_nodes.size(); ++i) f[z0_nodes[i]] = values[i];
    return f;
}

std::vector<std::size_t> omega_samples(const Grid& grid, std::size_t stride) {
    if (stride == 0) throw Error(ErrorCode::config_error, "z0 stride must be positive");
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < grid.n(); k += stride)
        for (std::size_t j = 0; j < grid.n(); j += stride) {
            const std::size_t i = grid.index(j, k);
            if (grid.in_omega(i)) out.push_back(i);
        }
    return out;
}

Field low_order_block(const PairSetup& setup, double tau) {
    const Grid& g = setup.dq.grid();
    const Field& chi = setup.side1.chi;
    const Field a1 = chi * cauchy_dbar_inv(setup.dq);
    const Field a2 = chi * cauchy_d_inv(setup.dq);
    const Field c_dq = chirp_riemann_sum(setup.dq, tau);
    const Field c_a1 = chirp_riemann_sum(a1, tau);
    const Field c_b1 = chirp_riemann_sum(a1 * setup.side1.inner, tau);
    const Field c_a2 = chirp_riemann_sum(a2, tau);
    const Field c_b2 = chirp_riemann_sum(a2 * setup.side2.inner, tau);
    Field out(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const cplx z0 = g.node(i);
        const cplx t10 = -0.25 * (setup.side1.beta_at(z0) * c_a1[i] - c_b1[i]);
        const cplx t01 = -0.25 * (setup.side2.beta_at(z0) * c_a2[i] - c_b2[i]);
        out[i] = c_dq[i] + t10 + t01;
    }
    return out;
}

RecoveryResult recover_difference(const PairSetup& setup, const RecoveryOptions& opt) {
    const Grid& g = setup.dq.grid();
    validate_phase(g, {opt.tau, {}});
    RecoveryResult r;
    r.tau = opt.tau;
    r.z0_nodes = omega_samples(g, opt.stride);
    const std::size_t count = r.z0_nodes.size();
    const Field low = low_order_block(setup, opt.tau);
    r.target.resize(count);
    r.reconstruction.resize(count);
    r.remainder.assign(count, cplx{});
    for (std::size_t s = 0; s < count; ++s) {
        r.target[s] = setup.dq[r.z0_nodes[s]];
        r.reconstruction[s] = low[r.z0_nodes[s]];
    }
    const std::size_t K = opt.max_order;
    if (K >= 2) {
        parallel_for(count, opt.jobs, [&](std::size_t s) {
            const PhaseParams pp{opt.tau, g.node(r.z0_nodes[s])};
            const CgoSeries s1 = build_cgo_series(setup.side1, pp, opt.tol, K);
            const CgoSeries s2 = build_cgo_series(setup.side2, pp, opt.tol, K);
            cplx acc{};
            for (std::size_t k = 0; k <= std::min(K, s1.order()); ++k)
                for (std::size_t l = (k >= 2 ? 0 : 2 - k); l + k <= K && l <= s2.order(); ++l)
                    acc += term_integral(k, l, s1, s2, setup.dq);
            r.remainder[s] = acc;
        });
    }
    std::vector<cplx> diff(count), total(count);
    for (std::size_t s = 0; s < count; ++s) {
        diff[s] = r.reconstruction[s] - r.target[s];
        total[s] = diff[s] + r.remainder[s];
    }
    const double ref = l2(r.target);
    r.reconstruction_error = relative(l2(diff), ref);
    r.remainder_norm = relative(l2(r.remainder), ref);
    r.total_error = relative(l2(total), ref);
    return r;
}

DecayReport recover_single(const Field& q, const std::vector<double>& taus) {
    const double ref = lp_norm(q, 2.0);
    std::vector<double> errors;
    for (double tau : taus) errors.push_back(relative(lp_norm(apply_E(q, tau) - q, 2.0), ref));
    return make_decay_report("E q - q (relative)", taus, errors, -1.0);
}

}  // namespace cgo
