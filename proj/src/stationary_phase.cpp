#include "cgo/stationary_phase.hpp"

#include "cgo/fft.hpp"
#include "cgo/kernels.hpp"

namespace cgo {

ChirpMultiplier::ChirpMultiplier(const Grid& grid, double tau) : grid_(grid), tau_(tau), values_(grid.size()) {
    if (tau == 0.0 || !std::isfinite(tau)) throw Error(ErrorCode::invalid_exponent, "chirp needs a finite tau != 0");
    const std::size_t n = grid.n();
    const double dxi = 2.0 * pi / (static_cast<double>(n) * grid.spacing());
    for (std::size_t k2 = 0; k2 < n; ++k2) {
        const double xi2 = dxi * static_cast<double>(fft_frequency_index(k2, n));
        for (std::size_t k1 = 0; k1 < n; ++k1) {
            const double xi1 = dxi * static_cast<double>(fft_frequency_index(k1, n));
            values_[k2 * n + k1] = std::polar(1.0, (xi1 * xi1 - xi2 * xi2) / (8.0 * tau));
        }
    }
}

Field ChirpMultiplier::apply(const Field& f) const {
    if (!(f.grid() == grid_)) throw Error(ErrorCode::grid_mismatch, "chirp multiplier built for another grid");
    Field out = f;
    const auto& fft = Fft2d::get(grid_.n());
    fft.forward(out.data());
    kernels::active().cmul(out.data(), values_.data(), out.data(), out.size());
    fft.backward(out.data());
    kernels::active().scale(1.0 / static_cast<double>(out.size()), out.data(), out.size());
    return out;
}

Field apply_E(const Field& f, double tau) { return ChirpMultiplier(f.grid(), tau).apply(f); }

Field chirp_riemann_sum(const Field& f, double tau) {
    const Grid& g = f.grid();
    validate_phase(g, {tau, {}});
    const std::size_t n = g.n();
    const std::size_t N = 2 * n;
    const double h = g.spacing();
    const double weight = 2.0 * tau / pi * h * h / static_cast<double>(N * N);
    CVector kernel(N * N, cplx{});
    for (std::size_t k2 = 0; k2 < N; ++k2) {
        const long m2 = fft_frequency_index(k2, N);
        if (m2 <= -static_cast<long>(n)) continue;
        const double y = static_cast<double>(m2) * h;
        for (std::size_t k1 = 0; k1 < N; ++k1) {
            const long m1 = fft_frequency_index(k1, N);
            if (m1 <= -static_cast<long>(n)) continue;
            const double x = static_cast<double>(m1) * h;
            kernel[k2 * N + k1] = weight * std::polar(1.0, -2.0 * tau * (x * x - y * y));
        }
    }
    CVector work(N * N, cplx{});
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < n; ++j) work[k * N + j] = f.at(j, k);
    const auto& fft = Fft2d::get(N);
    fft.forward(kernel.data());
    fft.forward(work.data());
    kernels::active().cmul(work.data(), kernel.data(), work.data(), work.size());
    fft.backward(work.data());
    Field out(g);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < n; ++j) out.at(j, k) = work[k * N + j];
    return out;
}

DecayReport convergence_E(const Field& f, const std::vector<double>& taus) {
    std::vector<double> errors;
    errors.reserve(taus.size());
    for (double tau : taus) errors.push_back(lp_norm(apply_E(f, tau) - f, 2.0));
    return make_decay_report("E f - f", taus, errors, -1.0);
}

}  // namespace cgo
