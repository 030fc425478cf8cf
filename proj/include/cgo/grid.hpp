#pragma once

// Uniform discretization of the square X = [-L, L)^2 with the disc
// Omega = {|z| <= R} embedded at its center, plus complex fields sampled on it.
//
// Node (j, k) sits at z = (-L + j h) + i (-L + k h), h = 2L / n, and is stored
// row-major at index k * n + j (rows run along y).

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdlib>
#include <functional>
#include <limits>
#include <new>
#include <vector>

#include "cgo/error.hpp"

namespace cgo {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

// 64-byte aligned storage so every buffer is usable by FFTW plans and the
// vector kernels.
template <class T>
struct AlignedAllocator {
    using value_type = T;
    AlignedAllocator() = default;
    template <class U>
    AlignedAllocator(const AlignedAllocator<U>&) noexcept {}
    T* allocate(std::size_t n) {
        void* p = ::operator new(n * sizeof(T), std::align_val_t{64});
        return static_cast<T*>(p);
    }
    void deallocate(T* p, std::size_t) noexcept { ::operator delete(p, std::align_val_t{64}); }
    template <class U>
    bool operator==(const AlignedAllocator<U>&) const noexcept { return true; }
};

using CVector = std::vector<cplx, AlignedAllocator<cplx>>;

class Grid {
  public:
    // Throws ErrorCode::invalid_grid unless n >= 16 is a power of two and the
    // cutoff margin (L - R) / 2 is at least 4h.
    static Grid make(std::size_t n, double half_width, double omega_radius);

    std::size_t n() const { return n_; }
    std::size_t size() const { return n_ * n_; }
    double half_width() const { return half_width_; }
    double omega_radius() const { return omega_radius_; }
    double spacing() const { return 2.0 * half_width_ / static_cast<double>(n_); }
    // Width of each half of the cutoff roll-off: chi falls from 1 at R to 0 at
    // R + 2 * margin = L.
    double margin() const { return 0.5 * (half_width_ - omega_radius_); }
    double cell_area() const { return spacing() * spacing(); }

    double coord(std::size_t j) const { return -half_width_ + static_cast<double>(j) * spacing(); }
    cplx node(std::size_t j, std::size_t k) const { return {coord(j), coord(k)}; }
    cplx node(std::size_t index) const { return node(index % n_, index / n_); }
    std::size_t index(std::size_t j, std::size_t k) const { return k * n_ + j; }
    bool in_omega(std::size_t index) const { return std::abs(node(index)) <= omega_radius_; }

    bool operator==(const Grid& o) const {
        return n_ == o.n_ && half_width_ == o.half_width_ && omega_radius_ == o.omega_radius_;
    }

  private:
    Grid(std::size_t n, double L, double R) : n_(n), half_width_(L), omega_radius_(R) {}
    std::size_t n_;
    double half_width_;
    double omega_radius_;
};

class Field {
  public:
    explicit Field(const Grid& grid) : grid_(grid), values_(grid.size(), cplx{}) {}
    Field(const Grid& grid, CVector values);

    static Field zeros(const Grid& grid) { return Field(grid); }
    static Field constant(const Grid& grid, cplx c);
    static Field from_function(const Grid& grid, const std::function<cplx(cplx)>& fn);

    const Grid& grid() const { return grid_; }
    std::size_t size() const { return values_.size(); }
    cplx* data() { return values_.data(); }
    const cplx* data() const { return values_.data(); }
    CVector& values() { return values_; }
    const CVector& values() const { return values_; }
    cplx& operator[](std::size_t i) { return values_[i]; }
    cplx operator[](std::size_t i) const { return values_[i]; }
    cplx& at(std::size_t j, std::size_t k) { return values_[grid_.index(j, k)]; }
    cplx at(std::size_t j, std::size_t k) const { return values_[grid_.index(j, k)]; }

    bool all_finite() const;
    Field conj() const;

    Field& operator+=(const Field& o);
    Field& operator-=(const Field& o);
    Field& operator*=(const Field& o);
    Field& operator*=(cplx s);
    Field& axpy(cplx alpha, const Field& x);

  private:
    Grid grid_;
    CVector values_;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(Field a, const Field& b);
Field operator*(Field a, cplx s);
Field operator*(cplx s, Field a);

// Throws ErrorCode::grid_mismatch when two fields live on different grids.
void require_same_grid(const Field& a, const Field& b);

struct PhaseParams {
    double tau;
    cplx z0;
};

// tau > 1 and the sampling guard 8 tau L h <= pi; violations are hard errors
// (ErrorCode::nyquist_violation).
void validate_phase(const Grid& grid, const PhaseParams& pp);
double max_nyquist_tau(const Grid& grid);

// Smooth step: 0 for t <= 0, 1 for t >= 1, C-infinity in between.
double smooth_step(double t);
// Derivative of smooth_step.
double smooth_step_derivative(double t);

Field make_cutoff_chi(const Grid& grid);

struct Region {
    enum class Kind { X, Omega, Annulus };
    Kind kind = Kind::X;
    // Annulus: {z in X : |z - center| >= inner_radius}.
    cplx center{};
    double inner_radius = 0.0;

    static Region whole() { return {}; }
    static Region omega() { return {Kind::Omega, {}, 0.0}; }
    static Region annulus(double r0, cplx center = {}) { return {Kind::Annulus, center, r0}; }
    bool contains(const Grid& grid, std::size_t index) const;
};

inline constexpr double p_infinity = std::numeric_limits<double>::infinity();

// Riemann-sum L^p norm (sum |f|^p h^2)^{1/p}; grid maximum for p = infinity.
double lp_norm(const Field& f, double p, const Region& region = Region::whole());

// f restricted to a region (zero elsewhere).
Field restrict_to(const Field& f, const Region& region);

}  // namespace cgo
