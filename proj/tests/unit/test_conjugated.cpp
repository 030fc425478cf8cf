#include "doctest.h"

#include "cgo/cauchy.hpp"
#include "cgo/conjugated.hpp"
#include "cgo/error.hpp"
#include "cgo/phase.hpp"
#include "cgo/potentials.hpp"

using namespace cgo;

TEST_CASE("T is a right inverse of dbar against the chirp") {
    const Grid g = Grid::make(256, 0.875, 0.5);
    const Field a = make_named_potential(g, "smooth_a");
    const PhaseParams pp{16.0, {0.1, 0.0}};
    const Field lhs = dbar(make_cutoff_chi(g) * apply_T(a, pp));
    const Field rhs = quadratic_phase(g, pp, -1) * a;
    CHECK(lp_norm(lhs - rhs, 2.0, Region::omega()) <= 1e-6 * lp_norm(rhs, 2.0));
}

TEST_CASE("integration by parts residual shrinks under refinement") {
    double prev = 1.0;
    for (std::size_t n : {128u, 256u}) {
        const Grid g = Grid::make(n, 0.875, 0.5);
        const double r = ibp_residual(make_cutoff_chi(g), {16.0, {}});
        CHECK(r < 0.5 * prev);
        prev = r;
    }
    CHECK(prev <= 1e-3);
    const Grid g = Grid::make(64, 0.875, 0.5);
    CHECK(ibp_residual(Field(g), {4.0, {}}) == 0.0);
}

TEST_CASE("T decay on the cutoff") {
    const Grid g = Grid::make(256, 0.875, 0.5);
    const Field chi = make_cutoff_chi(g);
    const std::vector<double> taus = {8, 16, 32, 64};
    const auto inf = measure_T_decay_inf(chi, 4.0, taus);
    CHECK(inf.within_upper_bound(0.1));
    const auto lp = measure_T_decay_lp(chi, 4.0, 4.0 / 3.0, taus);
    CHECK(lp.predicted_exponent == doctest::Approx(0.75 - 1.0 - 0.25));
    CHECK(lp.within_upper_bound(0.1));
}

TEST_CASE("exponent hypotheses") {
    CHECK_NOTHROW(check_T_lp_hypothesis(4.0, 4.0 / 3.0));
    CHECK_NOTHROW(check_T_lp_hypothesis(6.0, 1.5));
    for (auto [ps, q] : {std::pair{4.0, 2.0}, {4.0, 1.2}, {2.0, 1.5}, {1.0 / 0.0, 1.5}}) {
        try {
            check_T_lp_hypothesis(ps, q);
            FAIL("accepted p* = " << ps << ", q = " << q);
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::hypothesis_violation);
        }
    }
}
