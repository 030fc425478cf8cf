#include "doctest.h"

#include <random>

#include "cgo/cauchy.hpp"
#include "cgo/error.hpp"
#include "cgo/random_fields.hpp"

using namespace cgo;

namespace {

// Closed forms for the Gaussian e^{-|z|^2}:
//   dbar^{-1} = (1 - e^{-|z|^2}) / z,  d^{-1} = (1 - e^{-|z|^2}) / conj z.
cplx gauss_dbar_inv(cplx z) {
    const double r2 = std::norm(z);
    return r2 < 1e-14 ? std::conj(z) : (1.0 - std::exp(-r2)) / z;
}

}  // namespace

TEST_CASE("spectral Wirtinger derivatives of a Gaussian") {
    const Grid g = Grid::make(256, 4.0, 2.0);
    const Field f = Field::from_function(g, [](cplx z) -> cplx { return std::exp(-std::norm(z)); });
    // dbar e^{-|z|^2} = -z e^{-|z|^2}, d e^{-|z|^2} = -conj(z) e^{-|z|^2}.
    const Field ex_dbar = Field::from_function(g, [](cplx z) { return -z * std::exp(-std::norm(z)); });
    const Field ex_d = Field::from_function(g, [](cplx z) { return -std::conj(z) * std::exp(-std::norm(z)); });
    CHECK(lp_norm(dbar(f) - ex_dbar, p_infinity, Region::omega()) <= 1e-8);
    CHECK(lp_norm(d(f) - ex_d, p_infinity, Region::omega()) <= 1e-8);
    const Field lap = Field::from_function(g, [](cplx z) -> cplx {
        const double r2 = std::norm(z);
        return (4.0 * r2 - 4.0) * std::exp(-r2);
    });
    CHECK(lp_norm(laplacian(f) - lap, p_infinity, Region::omega()) <= 1e-7);
}

TEST_CASE("Cauchy transform of a Gaussian matches the closed form") {
    const Grid g = Grid::make(256, 4.0, 2.0);
    const Field f = Field::from_function(g, [](cplx z) -> cplx { return std::exp(-std::norm(z)); });
    const Field u = cauchy_dbar_inv(f);
    const Field v = cauchy_d_inv(f);
    double err_u = 0.0, err_v = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        err_u = std::max(err_u, std::abs(u[i] - gauss_dbar_inv(g.node(i))));
        err_v = std::max(err_v, std::abs(v[i] - std::conj(gauss_dbar_inv(g.node(i)))));
    }
    CHECK(err_u <= 1e-3);
    CHECK(err_v <= 1e-3);
}

TEST_CASE("disc indicator: error shrinks with h") {
    double prev = 1e300;
    for (std::size_t n : {64u, 128u, 256u}) {
        const Grid g = Grid::make(n, 2.0, 1.0);
        const double a = 0.5;
        const Field f = Field::from_function(g, [&](cplx z) -> cplx { return std::abs(z) <= a ? 1.0 : 0.0; });
        const Field u = cauchy_dbar_inv(f);
        double err = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) {
            const cplx z = g.node(i);
            err = std::max(err, std::abs(u[i] - (std::abs(z) <= a ? std::conj(z) : a * a / z)));
        }
        CAPTURE(n);
        CHECK(err <= 5.0 * g.spacing());
        CHECK(err < prev);
        prev = err;
    }
}

TEST_CASE("left inverse on band-limited data") {
    const Grid g = Grid::make(256, 0.875, 0.5);
    std::mt19937_64 rng(11);
    for (int t = 0; t < 3; ++t) {
        const Field f = WindowedModes::random(rng, 8, 10.0, g.omega_radius()).sample(g);
        CHECK(left_inverse_residual(f) <= 1e-6);
    }
}

TEST_CASE("Beurling transform is an L2 isometry on compact data") {
    const Grid g = Grid::make(256, 0.875, 0.5);
    std::mt19937_64 rng(5);
    const Field f = BumpSum::random(rng, 6, g.omega_radius()).sample(g);
    const Field pf = beurling(f);
    // Away from the frame the isometry is up to the truncation of the tail.
    CHECK(lp_norm(pf, 2.0) == doctest::Approx(lp_norm(f, 2.0)).epsilon(0.05));
    CHECK(lp_norm(beurling(dbar(f)) - d(f), 2.0) <= 1e-5 * lp_norm(d(f), 2.0));
}

TEST_CASE("padding invariance and the zero field") {
    const Grid g = Grid::make(128, 0.875, 0.5);
    std::mt19937_64 rng(2);
    const Field f = WindowedModes::random(rng, 6, 8.0, g.omega_radius()).sample(g);
    const Field a = cauchy_dbar_inv(f), b = cauchy_dbar_inv_padded(f, 4);
    CHECK(lp_norm(a - b, 2.0) <= 1e-12 * lp_norm(a, 2.0));
    const Field zero(g);
    CHECK(lp_norm(cauchy_dbar_inv(zero), p_infinity) == 0.0);
    CHECK(lp_norm(cauchy_d_inv(zero), p_infinity) == 0.0);
    CHECK(lp_norm(beurling(zero), p_infinity) == 0.0);
}

TEST_CASE("W1p bound is stable under refinement") {
    const Grid g = Grid::make(128, 0.875, 0.5);
    const auto rep = bounded_map_check(g, 3.0, 2, 9);
    CHECK(std::isfinite(rep.max_ratio_coarse));
    CHECK(rep.relative_change <= 0.1);
    const auto zeros = bounded_map_check(g, 3.0, 2, 9, true);
    CHECK(zeros.skipped == 2);
}
