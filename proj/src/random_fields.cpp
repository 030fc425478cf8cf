#include "cgo/random_fields.hpp"

namespace cgo {

double radial_window(cplx z, double r) {
    const double t = (std::abs(z) - 0.5 * r) / (0.5 * r);
    return 1.0 - smooth_step(t);
}

BumpSum BumpSum::random(std::mt19937_64& rng, std::size_t count, double support_radius) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    BumpSum s;
    s.support_radius = support_radius;
    for (std::size_t i = 0; i < count; ++i) {
        const double width = support_radius * (0.08 + 0.12 * unit(rng));
        const double reach = 0.5 * support_radius;
        const double r = reach * std::sqrt(unit(rng));
        const double theta = 2.0 * pi * unit(rng);
        const cplx amp{2.0 * unit(rng) - 1.0, 2.0 * unit(rng) - 1.0};
        s.bumps.push_back({std::polar(r, theta), amp, width});
    }
    return s;
}

cplx BumpSum::operator()(cplx z) const {
    const double w = radial_window(z, support_radius);
    if (w == 0.0) return {};
    cplx acc{};
    for (const auto& b : bumps) {
        const double r2 = std::norm(z - b.center) / (b.width * b.width);
        acc += b.amplitude * std::exp(-r2);
    }
    return acc * w;
}

Field BumpSum::sample(const Grid& grid) const {
    return Field::from_function(grid, [this](cplx z) { return (*this)(z); });
}

WindowedModes WindowedModes::random(std::mt19937_64& rng, std::size_t count, double max_frequency,
                                    double support_radius) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    WindowedModes w;
    w.support_radius = support_radius;
    for (std::size_t i = 0; i < count; ++i) {
        const double r = max_frequency * std::sqrt(unit(rng));
        const double theta = 2.0 * pi * unit(rng);
        const cplx amp{2.0 * unit(rng) - 1.0, 2.0 * unit(rng) - 1.0};
        w.modes.push_back({r * std::cos(theta), r * std::sin(theta), amp});
    }
    return w;
}

cplx WindowedModes::operator()(cplx z) const {
    const double w = radial_window(z, support_radius);
    if (w == 0.0) return {};
    cplx acc{};
    for (const auto& m : modes) acc += m.amplitude * std::polar(1.0, m.xi1 * z.real() + m.xi2 * z.imag());
    return acc * w;
}

Field WindowedModes::sample(const Grid& grid) const {
    return Field::from_function(grid, [this](cplx z) { return (*this)(z); });
}

}  // namespace cgo
