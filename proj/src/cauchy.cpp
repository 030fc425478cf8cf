#include "cgo/cauchy.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <utility>

#include "cgo/fft.hpp"
#include "cgo/kernels.hpp"
#include "cgo/random_fields.hpp"

namespace cgo {

namespace {

// dbar and d multipliers on the n x n grid, pre-divided by n^2. Nyquist rows
// and columns are zeroed so the odd symbols stay odd on the lattice.
struct DerivativeSymbols {
    CVector dbar;
    CVector d;
    CVector laplacian;
};

std::shared_ptr<const DerivativeSymbols> symbols_for(const Grid& grid) {
    static std::mutex mutex;
    static std::map<std::pair<std::size_t, double>, std::shared_ptr<const DerivativeSymbols>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[{grid.n(), grid.half_width()}];
    if (slot) return slot;

    const std::size_t n = grid.n();
    const double norm = 1.0 / static_cast<double>(n * n);
    const double dxi = 2.0 * pi / (static_cast<double>(n) * grid.spacing());
    auto sym = std::make_shared<DerivativeSymbols>();
    sym->dbar.resize(n * n);
    sym->d.resize(n * n);
    sym->laplacian.resize(n * n);
    const long nyq = -static_cast<long>(n / 2);
    for (std::size_t k2 = 0; k2 < n; ++k2) {
        const long m2 = fft_frequency_index(k2, n);
        for (std::size_t k1 = 0; k1 < n; ++k1) {
            const long m1 = fft_frequency_index(k1, n);
            const double xi1 = dxi * static_cast<double>(m1);
            const double xi2 = dxi * static_cast<double>(m2);
            const std::size_t idx = k2 * n + k1;
            sym->laplacian[idx] = -(xi1 * xi1 + xi2 * xi2) * norm;
            if (m1 == nyq || m2 == nyq) continue;
            sym->dbar[idx] = cplx(-xi2, xi1) * (0.5 * norm);
            sym->d[idx] = cplx(xi2, xi1) * (0.5 * norm);
        }
    }
    slot = std::move(sym);
    return slot;
}

Field apply_symbol(const Field& f, const CVector& symbol) {
    Field out = f;
    const auto& fft = Fft2d::get(f.grid().n());
    fft.forward(out.data());
    kernels::active().cmul(out.data(), symbol.data(), out.data(), out.size());
    fft.backward(out.data());
    return out;
}

// Aperiodic convolution of f with a kernel given by its (normalized) transform
// on a padded cyclic lattice of side N >= 2n.
Field convolve(const Field& f, const CVector& kernel_hat, std::size_t N) {
    const std::size_t n = f.grid().n();
    CVector buf(N * N, cplx{});
    for (std::size_t k = 0; k < n; ++k)
        std::copy_n(f.data() + k * n, n, buf.data() + k * N);
    const auto& fft = Fft2d::get(N);
    fft.forward(buf.data());
    kernels::active().cmul(buf.data(), kernel_hat.data(), buf.data(), buf.size());
    fft.backward(buf.data());
    Field out(f.grid());
    for (std::size_t k = 0; k < n; ++k)
        std::copy_n(buf.data() + k * N, n, out.data() + k * n);
    return out;
}

// Place offsets |m_i| < n of a real-space kernel (stored cyclically on an M
// lattice) onto a cyclic N lattice, then transform and normalize.
CVector window_and_transform(const CVector& kernel, std::size_t M, std::size_t n, std::size_t N,
                             CVector* windowed_out = nullptr) {
    CVector win(N * N, cplx{});
    const long nn = static_cast<long>(n);
    for (long m2 = -nn + 1; m2 < nn; ++m2) {
        const std::size_t src2 = static_cast<std::size_t>((m2 + static_cast<long>(M)) % static_cast<long>(M));
        const std::size_t dst2 = static_cast<std::size_t>((m2 + static_cast<long>(N)) % static_cast<long>(N));
        for (long m1 = -nn + 1; m1 < nn; ++m1) {
            const std::size_t src1 = static_cast<std::size_t>((m1 + static_cast<long>(M)) % static_cast<long>(M));
            const std::size_t dst1 = static_cast<std::size_t>((m1 + static_cast<long>(N)) % static_cast<long>(N));
            win[dst2 * N + dst1] = kernel[src2 * M + src1];
        }
    }
    if (windowed_out) *windowed_out = win;
    Fft2d::get(N).forward(win.data());
    kernels::active().scale(1.0 / static_cast<double>(N * N), win.data(), win.size());
    return win;
}

std::shared_ptr<const CauchyKernelTable> build_table(const Grid& grid) {
    const std::size_t n = grid.n();
    const std::size_t N2 = 2 * n;
    const std::size_t N4 = 4 * n;
    const double h = grid.spacing();
    const double D = 2.0 * std::sqrt(2.0) * grid.half_width();
    const double dxi = 2.0 * pi / (static_cast<double>(N4) * h);
    const long nyq = -static_cast<long>(N4 / 2);

    // Exact transforms of the truncated kernels on the 4n lattice. J0 depends
    // on |xi| only, so it is evaluated on one octant of index space.
    CVector dbar_hat(N4 * N4, cplx{});
    CVector beur_hat(N4 * N4, cplx{});
    const long half = static_cast<long>(N4 / 2);
    std::vector<double> j0_table(static_cast<std::size_t>((half + 1) * (half + 1)), 0.0);
    for (long a = 0; a <= half; ++a)
        for (long b = 0; b <= a; ++b) {
            const double rho = dxi * std::hypot(static_cast<double>(a), static_cast<double>(b));
            const double v = std::cyl_bessel_j(0.0, rho * D);
            j0_table[static_cast<std::size_t>(a * (half + 1) + b)] = v;
            j0_table[static_cast<std::size_t>(b * (half + 1) + a)] = v;
        }
    for (std::size_t k2 = 0; k2 < N4; ++k2) {
        const long m2 = fft_frequency_index(k2, N4);
        for (std::size_t k1 = 0; k1 < N4; ++k1) {
            const long m1 = fft_frequency_index(k1, N4);
            if (m1 == nyq || m2 == nyq || (m1 == 0 && m2 == 0)) continue;
            const double xi1 = dxi * static_cast<double>(m1);
            const double xi2 = dxi * static_cast<double>(m2);
            const double j0 = j0_table[static_cast<std::size_t>(std::labs(m1) * (half + 1) + std::labs(m2))];
            const double damp = 1.0 - j0;
            const cplx xi(xi1, xi2);
            const std::size_t idx = k2 * N4 + k1;
            dbar_hat[idx] = cplx(0.0, -2.0) * damp / xi;
            beur_hat[idx] = damp * std::conj(xi) / xi;
        }
    }
    const auto& fft4 = Fft2d::get(N4);
    fft4.backward(dbar_hat.data());
    fft4.backward(beur_hat.data());
    // Inverse transform of samples spaced 2 pi / (N4 h) gives the discrete
    // quadrature weight (h^2 / (N4 h)^2) * sum = sum / N4^2.
    const double norm = 1.0 / static_cast<double>(N4 * N4);
    kernels::active().scale(norm, dbar_hat.data(), dbar_hat.size());
    kernels::active().scale(norm, beur_hat.data(), beur_hat.size());
    dbar_hat[0] = 0.0;
    beur_hat[0] = 0.0;

    auto table = std::make_shared<CauchyKernelTable>(CauchyKernelTable{
        grid, N2, D, {}, {}, {}, {}, {}, {}});
    table->dbar_inv_hat = window_and_transform(dbar_hat, N4, n, N2, &table->dbar_inv_kernel);
    table->beurling_hat = window_and_transform(beur_hat, N4, n, N2, &table->beurling_kernel);

    // d^{-1} has the conjugate kernel; conjugating in real space keeps
    // d^{-1} f = conj(dbar^{-1} conj f) exact.
    CVector d_kernel(table->dbar_inv_kernel.size());
    for (std::size_t i = 0; i < d_kernel.size(); ++i) d_kernel[i] = std::conj(table->dbar_inv_kernel[i]);
    table->d_inv_kernel = d_kernel;
    Fft2d::get(N2).forward(d_kernel.data());
    kernels::active().scale(1.0 / static_cast<double>(N2 * N2), d_kernel.data(), d_kernel.size());
    table->d_inv_hat = std::move(d_kernel);
    return table;
}

}  // namespace

std::shared_ptr<const CauchyKernelTable> CauchyKernelTable::for_grid(const Grid& grid) {
    static std::mutex mutex;
    static std::map<std::pair<std::size_t, double>, std::shared_ptr<const CauchyKernelTable>> cache;
    {
        std::lock_guard lock(mutex);
        auto it = cache.find({grid.n(), grid.half_width()});
        if (it != cache.end()) return it->second;
    }
    auto table = build_table(grid);
    std::lock_guard lock(mutex);
    auto [it, inserted] = cache.emplace(std::make_pair(grid.n(), grid.half_width()), table);
    return it->second;
}

cplx CauchyKernelTable::dbar_inv_at(long m1, long m2) const {
    const long N = static_cast<long>(padded_n);
    const auto i1 = static_cast<std::size_t>((m1 % N + N) % N);
    const auto i2 = static_cast<std::size_t>((m2 % N + N) % N);
    return dbar_inv_kernel[i2 * padded_n + i1];
}

Field dbar(const Field& f) { return apply_symbol(f, symbols_for(f.grid())->dbar); }
Field d(const Field& f) { return apply_symbol(f, symbols_for(f.grid())->d); }
Field laplacian(const Field& f) { return apply_symbol(f, symbols_for(f.grid())->laplacian); }

Field cauchy_dbar_inv(const Field& f) {
    const auto table = CauchyKernelTable::for_grid(f.grid());
    return convolve(f, table->dbar_inv_hat, table->padded_n);
}

Field cauchy_d_inv(const Field& f) {
    const auto table = CauchyKernelTable::for_grid(f.grid());
    return convolve(f, table->d_inv_hat, table->padded_n);
}

Field beurling(const Field& f) {
    const auto table = CauchyKernelTable::for_grid(f.grid());
    return convolve(f, table->beurling_hat, table->padded_n);
}

Field cauchy_dbar_inv_padded(const Field& f, std::size_t pad_factor) {
    if (pad_factor < 2) throw Error(ErrorCode::invalid_grid, "padding factor must be at least 2");
    const auto table = CauchyKernelTable::for_grid(f.grid());
    const std::size_t n = f.grid().n();
    const CVector hat = window_and_transform(table->dbar_inv_kernel, table->padded_n, n, pad_factor * n);
    return convolve(f, hat, pad_factor * n);
}

double left_inverse_residual(const Field& f) {
    const Field chi = make_cutoff_chi(f.grid());
    const Field back = dbar(chi * cauchy_dbar_inv(f));
    const double ref = lp_norm(f, 2.0, Region::omega());
    const double err = lp_norm(back - f, 2.0, Region::omega());
    return ref > 0.0 ? err / ref : err;
}

double w1p_norm(const Field& f, double p) {
    return lp_norm(f, p) + lp_norm(d(f), p) + lp_norm(dbar(f), p);
}

double cauchy_w1p_norm(const Field& f, double p) {
    return lp_norm(cauchy_dbar_inv(f), p) + lp_norm(beurling(f), p) + lp_norm(f, p);
}

BoundedMapReport bounded_map_check(const Grid& grid, double p, std::size_t trials, std::uint64_t seed,
                                   bool zero_fields) {
    if (!(p > 1.0) || std::isinf(p)) throw Error(ErrorCode::invalid_exponent, "bounded_map_check needs 1 < p < inf");
    const Grid fine = Grid::make(2 * grid.n(), grid.half_width(), grid.omega_radius());
    std::mt19937_64 rng(seed);
    BoundedMapReport report{p, trials, 0, 0.0, 0.0, 0.0};
    for (std::size_t t = 0; t < trials; ++t) {
        const BumpSum fn = BumpSum::random(rng, 3, grid.omega_radius());
        Field coarse = zero_fields ? Field(grid) : fn.sample(grid);
        Field refined = zero_fields ? Field(fine) : fn.sample(fine);
        const double nc = lp_norm(coarse, p);
        const double nf = lp_norm(refined, p);
        if (nc == 0.0 || nf == 0.0) {
            ++report.skipped;
            continue;
        }
        report.max_ratio_coarse = std::max(report.max_ratio_coarse, cauchy_w1p_norm(coarse, p) / nc);
        report.max_ratio_fine = std::max(report.max_ratio_fine, cauchy_w1p_norm(refined, p) / nf);
    }
    if (report.max_ratio_coarse > 0.0)
        report.relative_change =
            std::abs(report.max_ratio_fine - report.max_ratio_coarse) / report.max_ratio_coarse;
    return report;
}

}  // namespace cgo
