#include "doctest.h"

#include <random>
#include <vector>

#include "cgo/kernels.hpp"

using namespace cgo::kernels;

namespace {

std::vector<cplx> random_vector(std::mt19937_64& rng, std::size_t n) {
    std::normal_distribution<double> d;
    std::vector<cplx> v(n);
    for (auto& x : v) x = {d(rng), d(rng)};
    return v;
}

void check_close(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) <= 1e-14 * (1.0 + std::abs(a[i])));
}

}  // namespace

TEST_CASE("active table is one of the compiled variants") {
    const auto& t = active();
    CHECK((t.name == "scalar" || t.name == "avx2"));
}

TEST_CASE("AVX2 kernels match the scalar reference") {
    const KernelTable* v = avx2_table();
    if (!v) {
        MESSAGE("AVX2 variant unavailable on this machine; equivalence not exercised");
        return;
    }
    const KernelTable& s = scalar_table();
    std::mt19937_64 rng(7);
    // Odd lengths exercise the remainder loops.
    for (std::size_t n : {0u, 1u, 2u, 3u, 5u, 8u, 17u, 1000u, 4099u}) {
        CAPTURE(n);
        const auto a = random_vector(rng, n), b = random_vector(rng, n);
        std::vector<cplx> o1(n), o2(n);
        s.cmul(a.data(), b.data(), o1.data(), n);
        v->cmul(a.data(), b.data(), o2.data(), n);
        check_close(o1, o2);
        s.cmul_conj(a.data(), b.data(), o1.data(), n);
        v->cmul_conj(a.data(), b.data(), o2.data(), n);
        check_close(o1, o2);

        auto y1 = b, y2 = b;
        s.caxpy({0.3, -1.2}, a.data(), y1.data(), n);
        v->caxpy({0.3, -1.2}, a.data(), y2.data(), n);
        check_close(y1, y2);
        s.scale(-2.5, y1.data(), n);
        v->scale(-2.5, y2.data(), n);
        check_close(y1, y2);

        const double tol = 1e-12 * (1.0 + static_cast<double>(n));
        CHECK(std::abs(s.sum_abs(a.data(), n) - v->sum_abs(a.data(), n)) <= tol);
        CHECK(std::abs(s.sum_abs2(a.data(), n) - v->sum_abs2(a.data(), n)) <= tol);
        CHECK(std::abs(s.max_abs(a.data(), n) - v->max_abs(a.data(), n)) <= 1e-15 * (1.0 + s.max_abs(a.data(), n)));
        CHECK(std::abs(s.dot(a.data(), b.data(), n) - v->dot(a.data(), b.data(), n)) <= tol);
    }
}

TEST_CASE("in-place aliasing") {
    std::mt19937_64 rng(3);
    auto a = random_vector(rng, 33);
    const auto b = random_vector(rng, 33);
    std::vector<cplx> expect(33);
    for (std::size_t i = 0; i < 33; ++i) expect[i] = a[i] * b[i];
    active().cmul(a.data(), b.data(), a.data(), 33);
    check_close(a, expect);
}

TEST_CASE("scalar reference against direct loops") {
    const KernelTable& s = scalar_table();
    const std::vector<cplx> a = {{3, 4}, {0, -1}, {1, 1}};
    CHECK(s.sum_abs(a.data(), 3) == doctest::Approx(5.0 + 1.0 + std::sqrt(2.0)));
    CHECK(s.sum_abs2(a.data(), 3) == doctest::Approx(25.0 + 1.0 + 2.0));
    CHECK(s.max_abs(a.data(), 3) == doctest::Approx(5.0));
    CHECK(s.dot(a.data(), a.data(), 3) == cplx(-7 - 1 + 0, 24 + 0 + 2));
}
