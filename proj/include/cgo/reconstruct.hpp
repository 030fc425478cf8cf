#pragma once

// Term-by-term expansion of the pairing (2 tau / pi) \int (q1 - q2) u1 u2 with
// u_j the CGO solutions at (tau, z0):
//   T(k, l) = (2 tau / pi) \int (q1 - q2) e^+ F_{1,k} F_{2,l} dm,
// the decay of the order groups k + l = m, and the recovery of q1 - q2 from
// the k + l <= 1 block.

#include <ostream>
#include <string>
#include <vector>

#include "cgo/cgo.hpp"
#include "cgo/decay.hpp"

namespace cgo {

// Riemann sum over Omega. Both series must share (tau, z0).
cplx term_integral(std::size_t k, std::size_t l, const CgoSeries& s1, const CgoSeries& s2, const Field& dq);

// Sum of T(k, l) over all available k, l.
cplx full_term_sum(const CgoSeries& s1, const CgoSeries& s2, const Field& dq);

struct TermEntry {
    std::size_t k, l;
    double tau;
    cplx z0;
    cplx value;
};

struct TermTable {
    std::vector<TermEntry> entries;

    // Sum of the entries with k + l = order at (tau, z0).
    cplx order_sum(std::size_t order, double tau, cplx z0) const;
    void write_csv(std::ostream& os) const;
};

// The q-dependent, (tau, z0)-independent pieces for a potential pair.
struct PairSetup {
    CgoSetup side1;  // from q1
    CgoSetup side2;  // from q2
    Field dq;

    static PairSetup make(const Field& q1, const Field& q2, const BetaChoice& beta = {});
};

struct DecayTableOptions {
    std::vector<double> taus;
    std::vector<cplx> z0s;
    std::size_t max_order = 4;  // K
    double p = 1.5;             // Lebesgue exponent of the presets
    double tol = 1e-6;
    std::size_t jobs = 1;
};

struct DecayTableResult {
    TermTable table;
    // Per order m = 0..K: rms over z0 of |sum_{k+l=m} T(k, l)| against tau.
    // Predicted exponents: 0 for m <= 1, 1/p - 3/4 for m = 2, -(m - 2) alpha for m >= 3.
    std::vector<DecayReport> per_order;
    AlphaFit envelope1, envelope2;  // from the term norms of both sides over all samples
    // Per order m >= 3: max over (tau, z0) of |group| / B_m with
    // B_m = (2 tau / pi) ||dq||_{L^1} sum_{k+l=m} (C_1 tau^{-a_1})^k (C_2 tau^{-a_2})^l.
    std::vector<double> envelope_ratio;
};

DecayTableResult decay_table(const PairSetup& setup, const DecayTableOptions& options);

struct RecoveryOptions {
    double tau = 64.0;
    std::size_t max_order = 4;  // K; 1 skips the per-z0 series entirely
    std::size_t stride = 4;     // z0 on Omega nodes with j, k divisible by stride
    double tol = 1e-6;
    std::size_t jobs = 1;
};

struct RecoveryResult {
    double tau;
    std::vector<std::size_t> z0_nodes;  // grid indices
    std::vector<cplx> target;           // dq at the samples
    std::vector<cplx> reconstruction;   // k + l <= 1
    std::vector<cplx> remainder;        // 2 <= k + l <= K
    double reconstruction_error;        // ||rec - dq|| / ||dq|| over the samples
    double remainder_norm;              // ||rem|| / ||dq||
    double total_error;                 // ||rec + rem - dq|| / ||dq||

    // Sample values scattered onto the grid (zero elsewhere).
    Field as_field(const Grid& grid, const std::vector<cplx>& values) const;
};

// The k + l <= 1 block at every node: T(0,0) = chirp sum of dq and, since the
// Cauchy kernels are odd,
//   T(1,0) = -1/4 [beta_1(z0) C(a_1)(z0) - C(a_1 d^{-1} q1)(z0)],  a_1 = chi dbar^{-1} dq,
//   T(0,1) = -1/4 [beta_2(z0) C(a_2)(z0) - C(a_2 dbar^{-1} q2)(z0)], a_2 = chi d^{-1} dq,
// with C the chirp Riemann sum.
Field low_order_block(const PairSetup& setup, double tau);

RecoveryResult recover_difference(const PairSetup& setup, const RecoveryOptions& options);

// ||E q - q||_2 / ||q||_2 over the ladder (both series truncated at order 0).
DecayReport recover_single(const Field& q, const std::vector<double>& taus);

// Omega nodes with both grid indices divisible by stride.
std::vector<std::size_t> omega_samples(const Grid& grid, std::size_t stride);

}  // namespace cgo
