#include "cgo/dn_map.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cstring>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "cgo/field_io.hpp"
#include "cgo/parallel.hpp"
#include "json.hpp"

namespace cgo {

namespace {

using SpMat = Eigen::SparseMatrix<cplx>;
using Vec = Eigen::VectorXcd;

constexpr int dj[4] = {1, -1, 0, 0};
constexpr int dk[4] = {0, 0, 1, -1};

// Neighbour of (j, k) in direction dir, or false at the frame.
bool neighbour(const Grid& grid, std::size_t j, std::size_t k, int dir, std::size_t& out) {
    const long jj = static_cast<long>(j) + dj[dir];
    const long kk = static_cast<long>(k) + dk[dir];
    const long n = static_cast<long>(grid.n());
    if (jj < 0 || kk < 0 || jj >= n || kk >= n) return false;
    out = grid.index(static_cast<std::size_t>(jj), static_cast<std::size_t>(kk));
    return true;
}

}  // namespace

DiscDomain DiscDomain::make(const Grid& grid) {
    DiscDomain d;
    const std::size_t n = grid.n();
    d.slot.assign(grid.size(), none);
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (grid.in_omega(i)) {
            d.slot[i] = static_cast<long>(d.interior.size());
            d.interior.push_back(i);
        }
    std::vector<std::size_t> boundary;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid.in_omega(i)) continue;
        for (int dir = 0; dir < 4; ++dir) {
            std::size_t nb;
            if (neighbour(grid, i % n, i / n, dir, nb) && grid.in_omega(nb)) {
                boundary.push_back(i);
                break;
            }
        }
    }
    if (boundary.empty() || d.interior.empty()) throw Error(ErrorCode::invalid_grid, "Omega has no interior nodes");
    std::stable_sort(boundary.begin(), boundary.end(), [&](std::size_t a, std::size_t b) {
        return std::arg(grid.node(a)) < std::arg(grid.node(b));
    });
    for (std::size_t b = 0; b < boundary.size(); ++b) d.slot[boundary[b]] = -1 - static_cast<long>(b);
    d.boundary = std::move(boundary);
    return d;
}

struct DirichletSolver::Impl {
    Grid grid;
    DiscDomain domain;
    Field q;
    SpMat A;
    Eigen::SparseLU<SpMat> lu;
    double condition = 0.0;

    explicit Impl(const Field& q_) : grid(q_.grid()), domain(DiscDomain::make(q_.grid())), q(q_) {}

    // Interior right-hand side: minus the boundary couplings.
    Vec rhs(const std::vector<cplx>& g) const {
        const std::size_t n = grid.n();
        const double inv_h2 = 1.0 / grid.cell_area();
        Vec b = Vec::Zero(static_cast<long>(domain.interior.size()));
        for (std::size_t s = 0; s < domain.interior.size(); ++s) {
            const std::size_t i = domain.interior[s];
            for (int dir = 0; dir < 4; ++dir) {
                std::size_t nb;
                if (!neighbour(grid, i % n, i / n, dir, nb)) continue;
                const long sl = domain.slot[nb];
                if (sl < 0 && sl != DiscDomain::none) b[static_cast<long>(s)] -= inv_h2 * g[static_cast<std::size_t>(-1 - sl)];
            }
        }
        return b;
    }
};

DirichletSolver::DirichletSolver(const Field& q, double max_condition) : impl_(std::make_unique<Impl>(q)) {
    Impl& m = *impl_;
    const std::size_t n = m.grid.n();
    const double inv_h2 = 1.0 / m.grid.cell_area();
    const long N = static_cast<long>(m.domain.interior.size());
    std::vector<Eigen::Triplet<cplx>> trips;
    trips.reserve(5 * static_cast<std::size_t>(N));
    for (std::size_t s = 0; s < m.domain.interior.size(); ++s) {
        const std::size_t i = m.domain.interior[s];
        trips.emplace_back(static_cast<long>(s), static_cast<long>(s), -4.0 * inv_h2 + q[i]);
        for (int dir = 0; dir < 4; ++dir) {
            std::size_t nb;
            if (!neighbour(m.grid, i % n, i / n, dir, nb)) continue;
            const long sl = m.domain.slot[nb];
            if (sl >= 0) trips.emplace_back(static_cast<long>(s), sl, inv_h2);
        }
    }
    m.A.resize(N, N);
    m.A.setFromTriplets(trips.begin(), trips.end());
    m.A.makeCompressed();
    m.lu.analyzePattern(m.A);
    m.lu.factorize(m.A);
    if (m.lu.info() != Eigen::Success) throw Error(ErrorCode::near_singular, "sparse LU factorization failed");

    // ||A||_1 times a few steps of inverse power iteration for ||A^{-1}||.
    double norm_A = 0.0;
    for (long c = 0; c < m.A.outerSize(); ++c) {
        double col = 0.0;
        for (SpMat::InnerIterator it(m.A, c); it; ++it) col += std::abs(it.value());
        norm_A = std::max(norm_A, col);
    }
    std::mt19937_64 rng(12345);
    std::normal_distribution<double> normal;
    Vec x(N);
    for (long i = 0; i < N; ++i) x[i] = cplx(normal(rng), normal(rng));
    x /= x.norm();
    double growth = 0.0;
    for (int it = 0; it < 8; ++it) {
        Vec y = m.lu.solve(x);
        growth = y.norm();
        if (!std::isfinite(growth) || growth == 0.0) break;
        x = y / growth;
    }
    m.condition = std::isfinite(growth) ? norm_A * growth : std::numeric_limits<double>::infinity();
    if (!(m.condition <= max_condition)) {
        std::ostringstream why;
        why << "condition estimate " << m.condition << " exceeds " << max_condition
            << " (0 is close to a Dirichlet eigenvalue)";
        throw Error(ErrorCode::near_singular, why.str());
    }
}

DirichletSolver::~DirichletSolver() = default;
DirichletSolver::DirichletSolver(DirichletSolver&&) noexcept = default;

const Grid& DirichletSolver::grid() const { return impl_->grid; }
const DiscDomain& DirichletSolver::domain() const { return impl_->domain; }
double DirichletSolver::condition_estimate() const { return impl_->condition; }

Field DirichletSolver::solve(const std::vector<cplx>& g) const {
    const Impl& m = *impl_;
    if (g.size() != m.domain.boundary.size())
        throw Error(ErrorCode::grid_mismatch, "Dirichlet data size differs from the boundary node count");
    const Vec x = m.lu.solve(m.rhs(g));
    Field u(m.grid);
    for (std::size_t s = 0; s < m.domain.interior.size(); ++s) u[m.domain.interior[s]] = x[static_cast<long>(s)];
    for (std::size_t b = 0; b < m.domain.boundary.size(); ++b) u[m.domain.boundary[b]] = g[b];
    return u;
}

std::vector<Field> DirichletSolver::solve_unit_block(std::size_t first, std::size_t last) const {
    const Impl& m = *impl_;
    const long N = static_cast<long>(m.domain.interior.size());
    const long cols = static_cast<long>(last - first);
    Eigen::MatrixXcd rhs = Eigen::MatrixXcd::Zero(N, cols);
    std::vector<cplx> e(m.domain.boundary.size(), cplx{});
    for (std::size_t c = first; c < last; ++c) {
        e[c] = 1.0;
        rhs.col(static_cast<long>(c - first)) = m.rhs(e);
        e[c] = 0.0;
    }
    const Eigen::MatrixXcd x = m.lu.solve(rhs);
    std::vector<Field> out;
    out.reserve(last - first);
    for (std::size_t c = first; c < last; ++c) {
        Field u(m.grid);
        for (std::size_t s = 0; s < m.domain.interior.size(); ++s)
            u[m.domain.interior[s]] = x(static_cast<long>(s), static_cast<long>(c - first));
        u[m.domain.boundary[c]] = 1.0;
        out.push_back(std::move(u));
    }
    return out;
}

Field DirichletSolver::solve(const std::function<cplx(cplx)>& g) const {
    std::vector<cplx> values;
    values.reserve(impl_->domain.boundary.size());
    for (std::size_t i : impl_->domain.boundary) values.push_back(g(impl_->grid.node(i)));
    return solve(values);
}

double DirichletSolver::residual(const Field& u) const {
    const Impl& m = *impl_;
    const std::size_t n = m.grid.n();
    const double inv_h2 = 1.0 / m.grid.cell_area();
    double worst = 0.0, scale = 0.0;
    for (std::size_t i : m.domain.interior) {
        cplx lap = -4.0 * u[i];
        for (int dir = 0; dir < 4; ++dir) {
            std::size_t nb;
            if (neighbour(m.grid, i % n, i / n, dir, nb)) lap += u[nb];
        }
        worst = std::max(worst, std::abs(lap * inv_h2 + m.q[i] * u[i]));
        scale = std::max(scale, std::abs(u[i]));
    }
    return scale > 0.0 ? worst / (scale * inv_h2) : worst;
}

Field solve_dirichlet(const Field& q, const std::vector<cplx>& g) { return DirichletSolver(q).solve(g); }

cplx boundary_flux(const Field& u, const DiscDomain& domain, std::size_t b) {
    const Grid& g = u.grid();
    const std::size_t i = domain.boundary[b];
    cplx flux{};
    for (int dir = 0; dir < 4; ++dir) {
        std::size_t nb;
        if (neighbour(g, i % g.n(), i / g.n(), dir, nb) && domain.slot[nb] >= 0) flux += u[i] - u[nb];
    }
    return flux;
}

double DnMap::symmetry_defect() const {
    const std::vector<double> w = arc_weights();
    Eigen::MatrixXcd form = matrix;
    for (long b = 0; b < form.rows(); ++b) form.row(b) *= w[static_cast<std::size_t>(b)];
    const double total = form.norm();
    return total > 0.0 ? (form - form.transpose()).norm() / total : 0.0;
}

std::vector<cplx> DnMap::apply(const std::vector<cplx>& g) const {
    if (g.size() != boundary_nodes.size()) throw Error(ErrorCode::grid_mismatch, "boundary data size mismatch");
    const Vec x = Eigen::Map<const Vec>(g.data(), static_cast<long>(g.size()));
    const Vec y = matrix * x;
    return {y.data(), y.data() + y.size()};
}

std::vector<double> DnMap::arc_weights() const {
    const std::size_t m = boundary_nodes.size();
    std::vector<double> theta(m), w(m);
    for (std::size_t b = 0; b < m; ++b) theta[b] = std::arg(grid.node(boundary_nodes[b]));
    const double R = grid.omega_radius();
    for (std::size_t b = 0; b < m; ++b) {
        double next = theta[(b + 1) % m], prev = theta[(b + m - 1) % m];
        if (b + 1 == m) next += 2.0 * pi;
        if (b == 0) prev -= 2.0 * pi;
        w[b] = 0.5 * (next - prev) * R;
    }
    return w;
}

DnMap assemble_dn(const Field& q, std::size_t jobs) {
    const DirichletSolver solver(q);
    const DiscDomain& dom = solver.domain();
    const std::size_t m = dom.boundary.size();
    DnMap out{q.grid(), dom.boundary, Eigen::MatrixXcd::Zero(static_cast<long>(m), static_cast<long>(m))};
    const std::vector<double> w = out.arc_weights();
    constexpr std::size_t block = 32;
    const std::size_t blocks = (m + block - 1) / block;
    parallel_for(blocks, jobs, [&](std::size_t blk) {
        const std::size_t c0 = blk * block;
        const std::size_t c1 = std::min(m, c0 + block);
        const std::vector<Field> us = solver.solve_unit_block(c0, c1);
        for (std::size_t c = c0; c < c1; ++c)
            for (std::size_t b = 0; b < m; ++b)
                out.matrix(static_cast<long>(b), static_cast<long>(c)) = boundary_flux(us[c - c0], dom, b) / w[b];
    });
    return out;
}

void save_dn_map(const std::string& path, const DnMap& map) {
    nlohmann::json header;
    header["format"] = "cgo-dn-map";
    header["version"] = 1;
    header["n"] = map.grid.n();
    header["L"] = map.grid.half_width();
    header["R"] = map.grid.omega_radius();
    header["boundary_nodes"] = map.boundary_nodes;
    std::string bytes = header.dump() + "\n";
    const std::size_t count = static_cast<std::size_t>(map.matrix.size());
    const std::size_t offset = bytes.size();
    bytes.resize(offset + count * sizeof(cplx));
    std::memcpy(bytes.data() + offset, map.matrix.data(), count * sizeof(cplx));
    write_file_atomic(path, bytes);
}

DnMap load_dn_map(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::io_error, "cannot open " + path);
    std::string line;
    std::getline(in, line);
    nlohmann::json header;
    try {
        header = nlohmann::json::parse(line);
    } catch (const std::exception& e) {
        throw Error(ErrorCode::io_error, "bad DN map header in " + path + ": " + e.what());
    }
    if (header.value("format", "") != "cgo-dn-map" || header.value("version", 0) != 1)
        throw Error(ErrorCode::io_error, "unsupported DN map format in " + path);
    const Grid grid = Grid::make(header["n"].get<std::size_t>(), header["L"].get<double>(), header["R"].get<double>());
    DnMap map{grid, header["boundary_nodes"].get<std::vector<std::size_t>>(), {}};
    const long m = static_cast<long>(map.boundary_nodes.size());
    map.matrix.resize(m, m);
    in.read(reinterpret_cast<char*>(map.matrix.data()), static_cast<std::streamsize>(m * m * sizeof(cplx)));
    if (!in) throw Error(ErrorCode::io_error, "truncated DN map " + path);
    return map;
}

cplx alessandrini_pairing(const Field& q1, const Field& q2, const Field& u1, const Field& u2) {
    require_same_grid(q1, q2);
    require_same_grid(q1, u1);
    require_same_grid(q1, u2);
    const Grid& g = q1.grid();
    cplx acc{};
    for (std::size_t i = 0; i < g.size(); ++i)
        if (g.in_omega(i)) acc += (q1[i] - q2[i]) * u1[i] * u2[i];
    return acc * g.cell_area();
}

cplx boundary_pairing(const Field& q1, const Field& q2, const std::vector<cplx>& g1, const std::vector<cplx>& g2) {
    require_same_grid(q1, q2);
    const DirichletSolver s1(q1), s2(q2);
    const Field a = s1.solve(g1);
    const Field b = s2.solve(g1);
    const DiscDomain& dom = s1.domain();
    cplx acc{};
    for (std::size_t i = 0; i < dom.boundary.size(); ++i)
        acc += g2[i] * (boundary_flux(a, dom, i) - boundary_flux(b, dom, i));
    return acc;
}

cplx boundary_pairing(const DnMap& map1, const DnMap& map2, const std::vector<cplx>& g1,
                      const std::vector<cplx>& g2) {
    if (map1.boundary_nodes != map2.boundary_nodes) throw Error(ErrorCode::grid_mismatch, "DN maps on different grids");
    const std::vector<cplx> a = map1.apply(g1);
    const std::vector<cplx> b = map2.apply(g1);
    const std::vector<double> w = map1.arc_weights();
    cplx acc{};
    for (std::size_t i = 0; i < a.size(); ++i) acc += w[i] * g2[i] * (a[i] - b[i]);
    return acc;
}

}  // namespace cgo
