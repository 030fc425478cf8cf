#pragma once

// Finite-difference forward problem (Delta + q) u = 0 on the disc Omega with
// Dirichlet data, the discrete Dirichlet-to-Neumann matrix, and the pairing
// \int_Omega (q1 - q2) u1 u2.
//
// Unknowns are the grid nodes inside Omega. Boundary nodes are the nodes
// outside Omega with a 4-neighbour inside; Dirichlet data lives there, sorted
// by polar angle.

#include <functional>
#include <limits>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cgo/grid.hpp"

namespace cgo {

struct DiscDomain {
    std::vector<std::size_t> interior;  // grid indices
    std::vector<std::size_t> boundary;  // grid indices, by polar angle
    // Per grid index: interior slot, or -1 - boundary slot, or none.
    std::vector<long> slot;
    static constexpr long none = std::numeric_limits<long>::min();

    static DiscDomain make(const Grid& grid);
};

class DirichletSolver {
  public:
    // Factorizes the 5-point operator Delta_h + q on the interior nodes.
    // Throws near_singular when the condition estimate exceeds
    // max_condition (0 is then close to a Dirichlet eigenvalue of -q).
    DirichletSolver(const Field& q, double max_condition = 1e12);
    ~DirichletSolver();
    DirichletSolver(DirichletSolver&&) noexcept;

    const Grid& grid() const;
    const DiscDomain& domain() const;
    double condition_estimate() const;

    // g holds one value per boundary node. The result carries the solution on
    // interior nodes, g on boundary nodes and 0 elsewhere.
    Field solve(const std::vector<cplx>& g) const;
    Field solve(const std::function<cplx(cplx)>& g) const;
    // Solutions for the unit data e_first .. e_{last-1} in one block solve.
    std::vector<Field> solve_unit_block(std::size_t first, std::size_t last) const;

    // max |Delta_h u + q u| over interior nodes relative to max |u|.
    double residual(const Field& u) const;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

Field solve_dirichlet(const Field& q, const std::vector<cplx>& g);

// Discrete conormal flux at boundary node b: sum of u_b - u_i over the
// interior 4-neighbours i. Summation by parts gives, for discrete solutions,
//   sum_b v_b flux_b(u) - u_b flux_b(v) = h^2 sum_interior (q_v - q_u) u v,
// the discrete Green identity.
cplx boundary_flux(const Field& u, const DiscDomain& domain, std::size_t b);

struct DnMap {
    Grid grid;
    std::vector<std::size_t> boundary_nodes;
    // Column c: normal derivative (flux / arc weight) of the solution with
    // data e_c.
    Eigen::MatrixXcd matrix;

    // ||W M - (W M)^T||_F / ||W M||_F with W the arc weights: the DN form
    // <M f, g> = sum_b w_b g_b (M f)_b is the symmetric object.
    double symmetry_defect() const;
    std::vector<cplx> apply(const std::vector<cplx>& g) const;
    // Arc-length weights of the boundary nodes (angle spacing times R).
    std::vector<double> arc_weights() const;
};

DnMap assemble_dn(const Field& q, std::size_t jobs = 1);

// Binary dense matrix (column-major re/im pairs) preceded by one JSON header
// line with n, L, R and the boundary node ordering.
void save_dn_map(const std::string& path, const DnMap& map);
DnMap load_dn_map(const std::string& path);

// Riemann sum of (q1 - q2) u1 u2 over Omega.
cplx alessandrini_pairing(const Field& q1, const Field& q2, const Field& u1, const Field& u2);

// sum_b w_b g2(b) [(L1 - L2) g1](b). By Green's identity this equals
// -\int (q1 - q2) u1 u2 for u_j solving (Delta + q_j) u_j = 0 with data g_j.
cplx boundary_pairing(const DnMap& map1, const DnMap& map2, const std::vector<cplx>& g1,
                      const std::vector<cplx>& g2);
// Same form from two Dirichlet solves with data g1, without assembling the maps.
cplx boundary_pairing(const Field& q1, const Field& q2, const std::vector<cplx>& g1, const std::vector<cplx>& g2);

}  // namespace cgo
