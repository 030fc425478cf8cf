#pragma once

// Potential presets q supported in Omega.

#include <string>
#include <utility>
#include <vector>

#include "cgo/grid.hpp"

namespace cgo {

struct PotentialSpec {
    enum class Kind { zero, smooth_bump, singular_power, disc_indicator, file };
    Kind kind = Kind::zero;
    // Lebesgue exponent the preset is meant to exercise.
    double p = 1.5;
    cplx center{};
    double width = 0.15;   // smooth_bump: Gaussian width (fraction of R)
    cplx amplitude{1.0};
    double exponent = 1.2; // singular_power: |z - c|^{-s}
    std::string path;      // file
};

// Samples the preset. Every preset is multiplied by a smooth radial taper that
// is 1 on |z| <= 0.6 R and 0 on |z| >= R, so q vanishes outside Omega
// (disc_indicator uses the sharp indicator of |z| <= R / 2 instead).
// singular_power samples (|z - c|^2 + 4h^2)^{-s/2}: the profile is resolved at
// the grid scale and tends to |z - c|^{-s} in L^p as h -> 0, while its L^2
// norm grows without bound.
Field make_potential(const Grid& grid, const PotentialSpec& spec);

// Named presets:
//   "zero", "smooth_a", "smooth_b" (Gaussian bumps, p = 1.5),
//   "singular" (s = 1.2, p = 1.4: in L^p, not in L^2),
//   "disc" (indicator of |z| <= R/2).
PotentialSpec potential_preset(const std::string& name);
std::vector<std::string> potential_preset_names();

// Sum of named presets joined by '+', e.g. "singular+smooth_a".
Field make_named_potential(const Grid& grid, const std::string& expr);

// Names of the pair (singular + smooth_a, singular + smooth_b): each potential
// is outside L^2 while their difference is smooth.
std::pair<std::string, std::string> l2_difference_pair();

// Taper used by the presets.
double omega_taper(cplx z, double R);

}  // namespace cgo
