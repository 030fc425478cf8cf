#include "cgo/grid.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "cgo/kernels.hpp"

namespace cgo {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::invalid_grid: return "invalid_grid";
        case ErrorCode::nyquist_violation: return "nyquist_violation";
        case ErrorCode::under_resolved_bump: return "under_resolved_bump";
        case ErrorCode::invalid_exponent: return "invalid_exponent";
        case ErrorCode::hypothesis_violation: return "hypothesis_violation";
        case ErrorCode::grid_mismatch: return "grid_mismatch";
        case ErrorCode::tau_too_small: return "tau_too_small";
        case ErrorCode::order_out_of_range: return "order_out_of_range";
        case ErrorCode::near_singular: return "near_singular";
        case ErrorCode::config_error: return "config_error";
        case ErrorCode::io_error: return "io_error";
    }
    return "unknown";
}

Grid Grid::make(std::size_t n, double half_width, double omega_radius) {
    std::ostringstream why;
    if (n < 16 || !std::has_single_bit(n)) {
        why << "n = " << n << " must be a power of two >= 16";
        throw Error(ErrorCode::invalid_grid, why.str());
    }
    if (!(half_width > 0.0) || !(omega_radius > 0.0) || !(omega_radius < half_width)) {
        why << "need 0 < R < L, got R = " << omega_radius << ", L = " << half_width;
        throw Error(ErrorCode::invalid_grid, why.str());
    }
    const Grid g(n, half_width, omega_radius);
    if (g.margin() < 4.0 * g.spacing()) {
        why << "cutoff margin " << g.margin() << " is below 4h = " << 4.0 * g.spacing();
        throw Error(ErrorCode::invalid_grid, why.str());
    }
    return g;
}

Field::Field(const Grid& grid, CVector values) : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size())
        throw Error(ErrorCode::grid_mismatch, "value count does not match the grid");
}

Field Field::constant(const Grid& grid, cplx c) {
    Field f(grid);
    std::fill(f.values_.begin(), f.values_.end(), c);
    return f;
}

Field Field::from_function(const Grid& grid, const std::function<cplx(cplx)>& fn) {
    Field f(grid);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = fn(grid.node(i));
    return f;
}

bool Field::all_finite() const {
    return std::all_of(values_.begin(), values_.end(),
                       [](cplx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); });
}

Field Field::conj() const {
    Field out(grid_);
    for (std::size_t i = 0; i < size(); ++i) out[i] = std::conj(values_[i]);
    return out;
}

void require_same_grid(const Field& a, const Field& b) {
    if (!(a.grid() == b.grid())) throw Error(ErrorCode::grid_mismatch, "fields live on different grids");
}

Field& Field::operator+=(const Field& o) {
    require_same_grid(*this, o);
    kernels::active().caxpy(1.0, o.data(), data(), size());
    return *this;
}

Field& Field::operator-=(const Field& o) {
    require_same_grid(*this, o);
    kernels::active().caxpy(-1.0, o.data(), data(), size());
    return *this;
}

Field& Field::operator*=(const Field& o) {
    require_same_grid(*this, o);
    kernels::active().cmul(data(), o.data(), data(), size());
    return *this;
}

Field& Field::operator*=(cplx s) {
    if (s.imag() == 0.0) {
        kernels::active().scale(s.real(), data(), size());
    } else {
        for (auto& v : values_) v *= s;
    }
    return *this;
}

Field& Field::axpy(cplx alpha, const Field& x) {
    require_same_grid(*this, x);
    kernels::active().caxpy(alpha, x.data(), data(), size());
    return *this;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(Field a, const Field& b) { return a *= b; }
Field operator*(Field a, cplx s) { return a *= s; }
Field operator*(cplx s, Field a) { return a *= s; }

double max_nyquist_tau(const Grid& grid) {
    return pi / (8.0 * grid.half_width() * grid.spacing());
}

void validate_phase(const Grid& grid, const PhaseParams& pp) {
    std::ostringstream why;
    if (!(pp.tau > 1.0)) {
        why << "tau must exceed 1, got " << pp.tau;
        throw Error(ErrorCode::nyquist_violation, why.str());
    }
    if (8.0 * pp.tau * grid.half_width() * grid.spacing() > pi) {
        why << "8 tau L h = " << 8.0 * pp.tau * grid.half_width() * grid.spacing()
            << " exceeds pi (largest admissible tau on this grid is " << max_nyquist_tau(grid) << ")";
        throw Error(ErrorCode::nyquist_violation, why.str());
    }
}

namespace {
inline double sigma(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }
}  // namespace

double smooth_step(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double a = sigma(t), b = sigma(1.0 - t);
    return a / (a + b);
}

double smooth_step_derivative(double t) {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    const double a = sigma(t), b = sigma(1.0 - t);
    const double da = a / (t * t), db = -b / ((1.0 - t) * (1.0 - t));
    const double s = a + b;
    return (da * b - a * db) / (s * s);
}

Field make_cutoff_chi(const Grid& grid) {
    const double R = grid.omega_radius();
    const double width = 2.0 * grid.margin();
    return Field::from_function(grid, [&](cplx z) -> cplx {
        return 1.0 - smooth_step((std::abs(z) - R) / width);
    });
}

bool Region::contains(const Grid& grid, std::size_t index) const {
    switch (kind) {
        case Kind::X: return true;
        case Kind::Omega: return grid.in_omega(index);
        case Kind::Annulus: return std::abs(grid.node(index) - center) >= inner_radius;
    }
    return false;
}

Field restrict_to(const Field& f, const Region& region) {
    if (region.kind == Region::Kind::X) return f;
    Field out(f.grid());
    for (std::size_t i = 0; i < f.size(); ++i)
        if (region.contains(f.grid(), i)) out[i] = f[i];
    return out;
}

double lp_norm(const Field& f, double p, const Region& region) {
    if (!(p >= 1.0)) throw Error(ErrorCode::invalid_exponent, "lp_norm needs p >= 1");
    const auto& k = kernels::active();
    const Field* src = &f;
    Field masked(f.grid());
    if (region.kind != Region::Kind::X) {
        masked = restrict_to(f, region);
        src = &masked;
    }
    const double area = f.grid().cell_area();
    if (std::isinf(p)) return k.max_abs(src->data(), src->size());
    if (p == 1.0) return k.sum_abs(src->data(), src->size()) * area;
    if (p == 2.0) return std::sqrt(k.sum_abs2(src->data(), src->size()) * area);
    double acc = 0.0;
    for (std::size_t i = 0; i < src->size(); ++i) acc += std::pow(std::abs((*src)[i]), p);
    return std::pow(acc * area, 1.0 / p);
}

}  // namespace cgo
