#include "cgo/potentials.hpp"

#include "cgo/field_io.hpp"

namespace cgo {

double omega_taper(cplx z, double R) { return 1.0 - smooth_step((std::abs(z) - 0.6 * R) / (0.4 * R)); }

namespace {

Field sample_single(const Grid& grid, const PotentialSpec& spec) {
    const double R = grid.omega_radius();
    switch (spec.kind) {
        case PotentialSpec::Kind::zero: return Field(grid);
        case PotentialSpec::Kind::smooth_bump: {
            const cplx c = spec.center * R;
            const double w = spec.width * R;
            return Field::from_function(grid, [&](cplx z) -> cplx {
                return spec.amplitude * std::exp(-std::norm(z - c) / (w * w)) * omega_taper(z, R);
            });
        }
        case PotentialSpec::Kind::singular_power: {
            const cplx c = spec.center * R;
            const double s = spec.exponent;
            // Grid-scale regularization: |z - c|^{-s} with r^2 replaced by r^2 + (2h)^2.
            const double eps = 2.0 * grid.spacing();
            return Field::from_function(grid, [&](cplx z) -> cplx {
                const double v = std::pow(std::norm(z - c) + eps * eps, -0.5 * s);
                return spec.amplitude * v * omega_taper(z, R);
            });
        }
        case PotentialSpec::Kind::disc_indicator:
            return Field::from_function(grid, [&](cplx z) -> cplx {
                return std::abs(z) <= 0.5 * R ? spec.amplitude : cplx{};
            });
        case PotentialSpec::Kind::file: {
            Field f = load_field(spec.path);
            if (!(f.grid() == grid)) throw Error(ErrorCode::grid_mismatch, "potential file grid differs from run grid");
            for (std::size_t i = 0; i < f.size(); ++i)
                if (!grid.in_omega(i)) f[i] = 0.0;
            return f;
        }
    }
    return Field(grid);
}

}  // namespace

Field make_potential(const Grid& grid, const PotentialSpec& spec) { return sample_single(grid, spec); }

PotentialSpec potential_preset(const std::string& name) {
    PotentialSpec s;
    if (name == "zero") return s;
    if (name == "smooth_a") {
        s.kind = PotentialSpec::Kind::smooth_bump;
        s.center = {0.1, 0.05};
        s.width = 0.35;
        s.amplitude = {6.0, 0.0};
        return s;
    }
    if (name == "smooth_b") {
        s.kind = PotentialSpec::Kind::smooth_bump;
        s.center = {-0.15, 0.1};
        s.width = 0.3;
        s.amplitude = {3.0, 2.0};
        return s;
    }
    if (name == "singular") {
        s.kind = PotentialSpec::Kind::singular_power;
        s.p = 1.4;
        s.exponent = 1.2;
        s.center = {0.13, -0.07};
        s.amplitude = {1.0, 0.0};
        return s;
    }
    if (name == "disc") {
        s.kind = PotentialSpec::Kind::disc_indicator;
        s.amplitude = {4.0, 0.0};
        return s;
    }
    throw Error(ErrorCode::config_error, "unknown potential preset '" + name + "'");
}

std::vector<std::string> potential_preset_names() { return {"zero", "smooth_a", "smooth_b", "singular", "disc"}; }

Field make_named_potential(const Grid& grid, const std::string& expr) {
    Field out(grid);
    std::size_t start = 0;
    while (start <= expr.size()) {
        const std::size_t plus = expr.find('+', start);
        const std::string name = expr.substr(start, plus == std::string::npos ? std::string::npos : plus - start);
        out += make_potential(grid, potential_preset(name));
        if (plus == std::string::npos) break;
        start = plus + 1;
    }
    return out;
}

std::pair<std::string, std::string> l2_difference_pair() { return {"singular+smooth_a", "singular+smooth_b"}; }

}  // namespace cgo
