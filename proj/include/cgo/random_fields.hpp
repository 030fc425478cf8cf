#pragma once

// Seeded generators for the smooth test inputs used by the verification
// pipelines. The continuum function is drawn first and then sampled, so the
// same seed gives the same function on any grid.

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "cgo/grid.hpp"

namespace cgo {

// Sum of Gaussian bumps with random complex amplitudes, centers inside
// |z| <= support_radius - 3 width, multiplied by a smooth window that vanishes
// outside support_radius.
struct BumpSum {
    struct Bump {
        cplx center;
        cplx amplitude;
        double width;
    };
    std::vector<Bump> bumps;
    double support_radius;

    static BumpSum random(std::mt19937_64& rng, std::size_t count, double support_radius);
    cplx operator()(cplx z) const;
    Field sample(const Grid& grid) const;
};

// Random trigonometric polynomial with frequencies |xi| <= max_frequency,
// multiplied by a smooth window of radius support_radius.
struct WindowedModes {
    struct Mode {
        double xi1, xi2;
        cplx amplitude;
    };
    std::vector<Mode> modes;
    double support_radius;

    static WindowedModes random(std::mt19937_64& rng, std::size_t count, double max_frequency,
                                double support_radius);
    cplx operator()(cplx z) const;
    Field sample(const Grid& grid) const;
};

// Smooth radial window: 1 on |z| <= 0.5 r, 0 on |z| >= r.
double radial_window(cplx z, double r);

}  // namespace cgo
