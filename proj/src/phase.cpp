#include "cgo/phase.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace cgo {

namespace {

template <class F>
double integrate(F f, double a, double b, double tol = 1e-13) {
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 15, tol);
}

void require_resolved(const Grid& grid, const PhaseParams& pp) {
    if (!(pp.tau > 0.0)) throw Error(ErrorCode::invalid_exponent, "tau must be positive");
    const double radius = 1.0 / std::sqrt(pp.tau);
    if (2.0 * radius < 2.0 * grid.spacing()) {
        std::ostringstream why;
        why << "bump radius tau^{-1/2} = " << radius << " is below h = " << grid.spacing();
        throw Error(ErrorCode::under_resolved_bump, why.str());
    }
}

// |v . e_r|^p integrated over the circle.
double angular_factor(double p, cplx v) {
    const double theta_v = std::arg(v);
    const double s = std::abs(v);
    return integrate([&](double t) { return std::pow(std::abs(s * std::cos(t - theta_v)), p); }, 0.0,
                     2.0 * pi);
}

}  // namespace

cplx quadratic_phase_at(cplx z, const PhaseParams& pp, int sign) {
    const cplx w = z - pp.z0;
    const double phase = 2.0 * pp.tau * (w.real() * w.real() - w.imag() * w.imag());
    return std::polar(1.0, sign >= 0 ? phase : -phase);
}

Field quadratic_phase(const Grid& grid, const PhaseParams& pp, int sign) {
    validate_phase(grid, pp);
    return Field::from_function(grid, [&](cplx z) { return quadratic_phase_at(z, pp, sign); });
}

double BumpFamily::psi(double r) { return 1.0 - smooth_step(r - 1.0); }
double BumpFamily::psi_prime(double r) { return -smooth_step_derivative(r - 1.0); }

double BumpFamily::norm(double p) {
    if (std::isinf(p)) return 1.0;
    const double inner = pi;  // psi = 1 on the unit disc
    const double ring = integrate([&](double r) { return 2.0 * pi * r * std::pow(psi(r), p); }, 1.0, 2.0);
    return std::pow(inner + ring, 1.0 / p);
}

double BumpFamily::directional_norm(double p, cplx v) {
    if (std::isinf(p)) {
        double m = 0.0;
        for (int i = 0; i <= 4000; ++i) m = std::max(m, std::abs(psi_prime(1.0 + i / 4000.0)));
        return m * std::abs(v);
    }
    const double radial = integrate([&](double r) { return r * std::pow(std::abs(psi_prime(r)), p); }, 1.0, 2.0);
    return std::pow(radial * angular_factor(p, v), 1.0 / p);
}

Field bump_tau(const Grid& grid, const PhaseParams& pp) {
    require_resolved(grid, pp);
    const double s = std::sqrt(pp.tau);
    return Field::from_function(grid, [&](cplx z) -> cplx { return BumpFamily::psi(s * std::abs(z - pp.z0)); });
}

Field bump_tau_directional(const Grid& grid, const PhaseParams& pp, cplx v) {
    require_resolved(grid, pp);
    const double s = std::sqrt(pp.tau);
    return Field::from_function(grid, [&](cplx z) -> cplx {
        const cplx w = z - pp.z0;
        const double r = std::abs(w);
        if (r == 0.0) return 0.0;
        // grad psi_tau = s psi'(s r) w / r, dotted with v.
        const double dot = (v.real() * w.real() + v.imag() * w.imag()) / r;
        return s * BumpFamily::psi_prime(s * r) * dot;
    });
}

cplx h_at(cplx z, const PhaseParams& pp) {
    const cplx w = z - pp.z0;
    const double r = std::abs(w);
    const double one_minus = 1.0 - BumpFamily::psi(std::sqrt(pp.tau) * r);
    if (one_minus == 0.0) return 0.0;
    return one_minus / std::conj(w);
}

cplx dbar_h_at(cplx z, const PhaseParams& pp) {
    const cplx w = z - pp.z0;
    const double r = std::abs(w);
    const double s = std::sqrt(pp.tau);
    const double one_minus = 1.0 - BumpFamily::psi(s * r);
    if (one_minus == 0.0) return 0.0;
    // dbar psi_tau = s psi'(s r) w / (2 r); dbar (1 / conj w) = -1 / conj(w)^2.
    const cplx dbar_psi = s * BumpFamily::psi_prime(s * r) * w / (2.0 * r);
    const cplx wb = std::conj(w);
    return -dbar_psi / wb - one_minus / (wb * wb);
}

cplx directional_h_at(cplx z, const PhaseParams& pp, cplx v) {
    const cplx w = z - pp.z0;
    const double r = std::abs(w);
    const double s = std::sqrt(pp.tau);
    const double one_minus = 1.0 - BumpFamily::psi(s * r);
    if (one_minus == 0.0) return 0.0;
    const double dpsi = s * BumpFamily::psi_prime(s * r);
    const cplx wb = std::conj(w);
    const cplx d_h = -(dpsi * wb / (2.0 * r)) / wb;
    const cplx dbar_h = -(dpsi * w / (2.0 * r)) / wb - one_minus / (wb * wb);
    // d/dx = d + dbar, d/dy = i (d - dbar).
    const cplx dx = d_h + dbar_h;
    const cplx dy = cplx(0.0, 1.0) * (d_h - dbar_h);
    return v.real() * dx + v.imag() * dy;
}

Field h_function(const Grid& grid, const PhaseParams& pp, HVariant variant) {
    require_resolved(grid, pp);
    const double s = std::sqrt(pp.tau);
    return Field::from_function(grid, [&](cplx z) -> cplx {
        const cplx w = z - pp.z0;
        const double one_minus = 1.0 - BumpFamily::psi(s * std::abs(w));
        if (one_minus == 0.0) return 0.0;
        return variant == HVariant::conj_denominator ? one_minus / std::conj(w) : one_minus / w;
    });
}

Field dbar_h(const Grid& grid, const PhaseParams& pp) {
    require_resolved(grid, pp);
    return Field::from_function(grid, [&](cplx z) { return dbar_h_at(z, pp); });
}

double bump_norm_plane(double p, double tau) {
    if (!(p >= 1.0) || std::isinf(p)) throw Error(ErrorCode::invalid_exponent, "bump norm needs 1 <= p < inf");
    if (!(tau > 0.0)) throw Error(ErrorCode::invalid_exponent, "tau must be positive");
    const double s = std::sqrt(tau);
    const double r0 = 1.0 / s;
    const double disc = pi * r0 * r0;
    const double ring = integrate(
        [&](double r) { return 2.0 * pi * r * std::pow(BumpFamily::psi(s * r), p); }, r0, 2.0 * r0);
    return std::pow(disc + ring, 1.0 / p);
}

double bump_directional_norm_plane(double p, double tau, cplx v) {
    if (!(p >= 1.0) || std::isinf(p)) throw Error(ErrorCode::invalid_exponent, "bump norm needs 1 <= p < inf");
    if (!(tau > 0.0)) throw Error(ErrorCode::invalid_exponent, "tau must be positive");
    const double s = std::sqrt(tau);
    const double r0 = 1.0 / s;
    const double theta_v = std::arg(v);
    const double speed = std::abs(v);
    const double ring = integrate(
        [&](double r) {
            const double radial = s * std::abs(BumpFamily::psi_prime(s * r));
            return r * integrate(
                           [&](double t) { return std::pow(radial * speed * std::abs(std::cos(t - theta_v)), p); },
                           0.0, 2.0 * pi);
        },
        r0, 2.0 * r0);
    return std::pow(ring, 1.0 / p);
}

double h_norm_plane(double p, double tau) {
    const double r0 = 1.0 / std::sqrt(tau);
    const double s = std::sqrt(tau);
    if (std::isinf(p)) {
        double m = 0.0;
        for (int i = 0; i <= 20000; ++i) {
            const double r = r0 * (1.0 + i / 20000.0);
            m = std::max(m, (1.0 - BumpFamily::psi(s * r)) / r);
        }
        return std::max(m, 1.0 / (2.0 * r0));
    }
    if (!(p > 2.0)) throw Error(ErrorCode::invalid_exponent, "h is in L^p(R^2) only for p > 2");
    const double ring = integrate(
        [&](double r) { return 2.0 * pi * std::pow(1.0 - BumpFamily::psi(s * r), p) * std::pow(r, 1.0 - p); }, r0,
        2.0 * r0);
    const double tail = 2.0 * pi * std::pow(2.0 * r0, 2.0 - p) / (p - 2.0);
    return std::pow(ring + tail, 1.0 / p);
}

double directional_h_norm_plane(double p, double tau, cplx v) {
    if (!(p > 1.0) || std::isinf(p)) throw Error(ErrorCode::invalid_exponent, "directional h norm needs 1 < p < inf");
    const double r0 = 1.0 / std::sqrt(tau);
    const PhaseParams pp{tau, {}};
    const double ring = integrate(
        [&](double r) {
            // Periodic in t: the trapezoid rule converges geometrically.
            constexpr int M = 512;
            double sum = 0.0;
            for (int k = 0; k < M; ++k)
                sum += std::pow(std::abs(directional_h_at(std::polar(r, 2.0 * pi * k / M), pp, v)), p);
            return r * sum * 2.0 * pi / M;
        },
        r0, 2.0 * r0, 1e-10);
    // Beyond the bump h = 1 / conj z and |v . grad h| = |v| / r^2.
    const double tail = 2.0 * pi * std::pow(std::abs(v), p) * std::pow(2.0 * r0, 2.0 - 2.0 * p) / (2.0 * p - 2.0);
    return std::pow(ring + tail, 1.0 / p);
}

InversePowerCheck inverse_power_norm_check(double a, double p, double tau, double L) {
    if (!(a > 0.0) || !(p >= 1.0) || !(a * p > 2.0)) {
        std::ostringstream why;
        why << "need p > 2/a, got a = " << a << ", p = " << p;
        throw Error(ErrorCode::invalid_exponent, why.str());
    }
    if (!(tau > 0.0)) throw Error(ErrorCode::invalid_exponent, "tau must be positive");
    const double r0 = 1.0 / std::sqrt(tau);
    const double r1 = 10.0 * L;
    const double e = a * p;
    double body = 0.0;
    if (r1 > r0) {
        // In s = log r the integrand 2 pi r^{1 - ap} dr becomes 2 pi e^{(2 - ap) s} ds.
        body = integrate([&](double sl) { return 2.0 * pi * std::exp((2.0 - e) * sl); }, std::log(r0), std::log(r1));
    }
    const double start = std::max(r0, r1);
    const double tail = 2.0 * pi * std::pow(start, 2.0 - e) / (e - 2.0);
    InversePowerCheck out{a, p, tau, std::pow(body + tail, 1.0 / p), 0.0};
    out.closed_form = std::pow(2.0 * pi / (e - 2.0), 1.0 / p) * std::pow(tau, a / 2.0 - 1.0 / p);
    return out;
}

void write_inverse_power_csv(std::ostream& os, const std::vector<InversePowerCheck>& rows) {
    os << "a,p,tau,numeric,closed_form,rel_err\n";
    os << std::setprecision(17);
    for (const auto& r : rows)
        os << r.a << ',' << r.p << ',' << r.tau << ',' << r.numeric << ',' << r.closed_form << ',' << r.rel_err()
           << '\n';
}

}  // namespace cgo
