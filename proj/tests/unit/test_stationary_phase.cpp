#include "doctest.h"

#include <random>

#include "cgo/error.hpp"
#include "cgo/stationary_phase.hpp"

using namespace cgo;

namespace {

// E e^{-|z|^2} in closed form: a product of two one-dimensional Fresnel-Gauss
// integrals, with a = 1 + 2 i tau and b = 1 - 2 i tau.
cplx gaussian_E(cplx z0, double tau) {
    const cplx a(1.0, 2.0 * tau), b(1.0, -2.0 * tau);
    const double x0 = z0.real(), y0 = z0.imag();
    const cplx I(0.0, 1.0);
    const cplx fx = std::sqrt(pi / a) * std::exp(-4.0 * tau * tau * x0 * x0 / a - 2.0 * I * tau * x0 * x0);
    const cplx fy = std::sqrt(pi / b) * std::exp(-4.0 * tau * tau * y0 * y0 / b + 2.0 * I * tau * y0 * y0);
    return 2.0 * tau / pi * fx * fy;
}

}  // namespace

TEST_CASE("E of a Gaussian against the closed form") {
    const Grid g = Grid::make(512, 4.0, 2.0);
    const Field f = Field::from_function(g, [](cplx z) -> cplx { return std::exp(-std::norm(z)); });
    for (double tau : {2.0, 8.0}) {
        const Field e = apply_E(f, tau);
        double err = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i)
            if (std::abs(g.node(i)) <= 1.5) err = std::max(err, std::abs(e[i] - gaussian_E(g.node(i), tau)));
        CAPTURE(tau);
        CHECK(err <= 1e-8);
    }
}

TEST_CASE("chirp Riemann sum matches E for band-limited data") {
    const Grid g = Grid::make(256, 4.0, 2.0);
    const Field f = Field::from_function(g, [](cplx z) -> cplx { return std::exp(-2.0 * std::norm(z - cplx(0.3, 0))); });
    const double tau = 2.0;
    const Field a = apply_E(f, tau), b = chirp_riemann_sum(f, tau);
    CHECK(lp_norm(a - b, 2.0, Region::omega()) <= 1e-6 * lp_norm(a, 2.0, Region::omega()));
}

TEST_CASE("unitarity, adjoint and semigroup") {
    const Grid g = Grid::make(128, 4.0, 2.0);
    std::mt19937_64 rng(1);
    std::normal_distribution<double> d;
    Field f(g);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = {d(rng), d(rng)};
    const Field e = apply_E(f, 8.0);
    CHECK(lp_norm(e, 2.0) == doctest::Approx(lp_norm(f, 2.0)).epsilon(1e-12));
    CHECK(lp_norm(apply_E(e, -8.0) - f, 2.0) <= 1e-12 * lp_norm(f, 2.0));
    CHECK(lp_norm(apply_E(e, 8.0) - apply_E(f, 4.0), 2.0) <= 1e-12 * lp_norm(f, 2.0));
    CHECK_THROWS_AS(ChirpMultiplier(g, 0.0), Error);
}

TEST_CASE("convergence to the identity") {
    const Grid g = Grid::make(256, 4.0, 2.0);
    const Field f = Field::from_function(g, [](cplx z) -> cplx { return std::exp(-std::norm(z)); });
    const DecayReport r = convergence_E(f, {8, 16, 32, 64});
    CHECK(r.strictly_decreasing());
    CHECK(r.fitted_exponent == doctest::Approx(-1.0).epsilon(0.05));
}
