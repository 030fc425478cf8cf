#include "doctest.h"

#include <sstream>

#include "cgo/error.hpp"
#include "cgo/potentials.hpp"
#include "cgo/reconstruct.hpp"

using namespace cgo;

namespace {

struct Fixture {
    Grid g = Grid::make(128, 0.875, 0.5);
    Field q1 = make_named_potential(g, "smooth_a");
    Field q2 = make_named_potential(g, "smooth_b");
    PairSetup pair = PairSetup::make(q1, q2);
};

// (2 tau / pi) h^2 sum over Omega of w u1 u2, written out directly.
cplx direct_sum(const Field& w, const Field& u1, const Field& u2, double tau) {
    const Grid& g = w.grid();
    cplx s{};
    for (std::size_t i = 0; i < g.size(); ++i)
        if (g.in_omega(i)) s += w[i] * u1[i] * u2[i];
    return 2.0 * tau / pi * g.cell_area() * s;
}

}  // namespace

TEST_CASE("zeroth term is the chirp sum of dq") {
    Fixture fx;
    const PhaseParams pp{16.0, {0.1, -0.05}};
    const CgoSeries s1 = build_cgo_series(fx.pair.side1, pp, 1e-8, 20);
    const CgoSeries s2 = build_cgo_series(fx.pair.side2, pp, 1e-8, 20);
    const Field chirp = Field::from_function(fx.g, [&](cplx z) {
        const cplx w = z - pp.z0;
        return std::polar(1.0, -2.0 * pp.tau * (w.real() * w.real() - w.imag() * w.imag()));
    });
    const cplx expected = direct_sum(fx.pair.dq, chirp, Field::constant(fx.g, 1.0), pp.tau);
    CHECK(std::abs(term_integral(0, 0, s1, s2, fx.pair.dq) - expected) <= 1e-12 * std::abs(expected));
}

TEST_CASE("full term sum is the pairing of the CGO solutions") {
    Fixture fx;
    const PhaseParams pp{16.0, {-0.1, 0.2}};
    const CgoSeries s1 = build_cgo_series(fx.pair.side1, pp, 1e-8, 20);
    const CgoSeries s2 = build_cgo_series(fx.pair.side2, pp, 1e-8, 20);
    const cplx expected = direct_sum(fx.pair.dq, cgo_solution(s1), cgo_solution(s2), pp.tau);
    CHECK(std::abs(full_term_sum(s1, s2, fx.pair.dq) - expected) <= 1e-10 * std::abs(expected));
}

TEST_CASE("fast low-order block matches per-node term integrals") {
    Fixture fx;
    const double tau = 16.0;
    const Field block = low_order_block(fx.pair, tau);
    for (std::size_t idx : {fx.g.index(64, 64), fx.g.index(70, 50), fx.g.index(40, 80)}) {
        const PhaseParams pp{tau, fx.g.node(idx)};
        const CgoSeries s1 = build_cgo_series(fx.pair.side1, pp, 1e-8, 20);
        const CgoSeries s2 = build_cgo_series(fx.pair.side2, pp, 1e-8, 20);
        const cplx direct = term_integral(0, 0, s1, s2, fx.pair.dq) + term_integral(1, 0, s1, s2, fx.pair.dq) +
                            term_integral(0, 1, s1, s2, fx.pair.dq);
        CHECK(std::abs(block[idx] - direct) <= 1e-10 * std::abs(direct));
    }
}

TEST_CASE("order out of range and mismatched series") {
    Fixture fx;
    const CgoSeries s1 = build_cgo_series(fx.pair.side1, {16.0, {}}, 1e-4, 20);
    const CgoSeries s2 = build_cgo_series(fx.pair.side2, {16.0, {}}, 1e-4, 20);
    const CgoSeries other = build_cgo_series(fx.pair.side2, {32.0, {}}, 1e-4, 20);
    CHECK_THROWS_AS(term_integral(s1.order() + 1, 0, s1, s2, fx.pair.dq), Error);
    CHECK_THROWS_AS(term_integral(0, 0, s1, other, fx.pair.dq), Error);
}

TEST_CASE("identical potentials recover zero") {
    Fixture fx;
    const PairSetup same = PairSetup::make(fx.q1, fx.q1);
    RecoveryOptions o;
    o.tau = 16.0;
    o.max_order = 1;
    o.stride = 8;
    const RecoveryResult r = recover_difference(same, o);
    for (cplx v : r.reconstruction) CHECK(v == cplx{});
}

TEST_CASE("reconstruction improves with tau") {
    Fixture fx;
    RecoveryOptions o;
    o.max_order = 1;
    o.stride = 4;
    double prev = 1e300;
    for (double tau : {8.0, 16.0, 32.0}) {
        o.tau = tau;
        const RecoveryResult r = recover_difference(fx.pair, o);
        CHECK(r.reconstruction_error < prev);
        prev = r.reconstruction_error;
        CHECK(r.z0_nodes.size() == omega_samples(fx.g, 4).size());
    }
}

TEST_CASE("decay table bookkeeping") {
    Fixture fx;
    DecayTableOptions o;
    o.taus = {8, 16, 32};
    o.z0s = {{0, 0}, {0.1, -0.1}};
    o.max_order = 3;
    const DecayTableResult r = decay_table(fx.pair, o);
    CHECK(r.per_order.size() == 4);
    CHECK(r.envelope_ratio.size() == 1);
    std::ostringstream os;
    r.table.write_csv(os);
    CHECK(os.str().rfind("k,l,tau,z0_re,z0_im,value_re,value_im\n", 0) == 0);
    // Order sums are the sums of the table entries.
    cplx s{};
    for (const auto& e : r.table.entries)
        if (e.k + e.l == 2 && e.tau == 16.0 && e.z0 == cplx(0.1, -0.1)) s += e.value;
    CHECK(r.table.order_sum(2, 16.0, {0.1, -0.1}) == s);
}

TEST_CASE("single-potential recovery through E") {
    const Grid g = Grid::make(128, 0.875, 0.5);
    const DecayReport r = recover_single(make_named_potential(g, "smooth_a"), {8, 16, 32});
    CHECK(r.strictly_decreasing());
}
