#include "doctest.h"

#include "cgo/error.hpp"
#include "cgo/grid.hpp"

using namespace cgo;

namespace {

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected cgo::Error");
    return ErrorCode::io_error;
}

}  // namespace

TEST_CASE("grid geometry") {
    const Grid g = Grid::make(64, 1.0, 0.5);
    CHECK(g.spacing() == doctest::Approx(2.0 / 64));
    CHECK(g.node(0) == cplx(-1.0, -1.0));
    CHECK(g.node(g.index(3, 5)) == g.node(3, 5));
    CHECK(g.in_omega(g.index(32, 32)));
    CHECK_FALSE(g.in_omega(0));
}

TEST_CASE("invalid grids are rejected") {
    CHECK(code_of([] { Grid::make(63, 1.0, 0.5); }) == ErrorCode::invalid_grid);
    CHECK(code_of([] { Grid::make(64, 1.0, 1.0); }) == ErrorCode::invalid_grid);
    CHECK(code_of([] { Grid::make(64, -1.0, 0.5); }) == ErrorCode::invalid_grid);
}

TEST_CASE("field arithmetic and grid mismatch") {
    const Grid a = Grid::make(32, 1.0, 0.5), b = Grid::make(64, 1.0, 0.5);
    Field f = Field::constant(a, {2.0, 1.0});
    const Field g = Field::constant(a, {0.0, 1.0});
    const Field prod = f * g;
    CHECK(prod[7] == cplx(-1.0, 2.0));
    CHECK((f - f)[3] == cplx{});
    CHECK(code_of([&] { f += Field(b); }) == ErrorCode::grid_mismatch);
}

TEST_CASE("Lp norms of a constant") {
    const Grid g = Grid::make(64, 1.0, 0.5);
    const Field one = Field::constant(g, 1.0);
    // |X| = 4, so ||1||_p = 4^{1/p}.
    CHECK(lp_norm(one, 2.0) == doctest::Approx(2.0));
    CHECK(lp_norm(one, 1.0) == doctest::Approx(4.0));
    CHECK(lp_norm(one, p_infinity) == 1.0);
    CHECK(code_of([&] { lp_norm(one, 0.5); }) == ErrorCode::invalid_exponent);
}

TEST_CASE("cutoff is one on Omega and vanishes at the frame") {
    const Grid g = Grid::make(128, 0.875, 0.5);
    const Field chi = make_cutoff_chi(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g.in_omega(i)) CHECK(chi[i] == cplx(1.0));
        if (std::abs(g.node(i)) >= g.half_width()) CHECK(chi[i] == cplx{});
        CHECK(chi[i].real() >= 0.0);
        CHECK(chi[i].real() <= 1.0);
    }
}

TEST_CASE("Nyquist guard") {
    const Grid g = Grid::make(256, 0.875, 0.5);
    CHECK(max_nyquist_tau(g) == doctest::Approx(pi / (8.0 * g.half_width() * g.spacing())));
    CHECK_NOTHROW(validate_phase(g, {64.0, {}}));
    CHECK(code_of([&] { validate_phase(g, {70.0, {}}); }) == ErrorCode::nyquist_violation);
}
