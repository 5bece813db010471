#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "eot/classical.hpp"
#include "eot/quantum.hpp"

namespace eot {

// Knobs for the brute-force verifiers.  `step` is the initial trial step of
// the backtracking line search, `tol` the gradient norm at which the ascent
// stops, and `fd_step` the central-difference half-width.
struct OracleConfig {
  double step = 1.0;
  int max_iter = 100000;
  double tol = 1e-9;
  double fd_step = 1e-5;
};

// Full-gradient ascent on the classical entropic dual: simultaneous update
// of all potentials with Armijo backtracking (factor 0.5, c = 1e-4).
// Deliberately independent of sinkhorn_classical — direct summation over
// plan entries, no coordinate updates, no log-sum-exp machinery.  Returns
// the potentials and the terminal dual value.  Raises OracleFailure when a
// step at the backtracking floor still lowers the value or when tol is not
// reached within max_iter.
std::pair<ClassicalPotentials, double> brute_dual_ascent_classical(
    const NdArray& cost, double eps, const std::vector<std::vector<double>>& marginals,
    const std::vector<std::vector<double>>& refs, const OracleConfig& cfg = {});

// The same ascent on the noncommutative dual.  Evaluation goes through
// nc_dual_value / nc_dual_gradient, but no solver iteration code is shared:
// all potentials move at once along the gradient.  Requires total dimension
// at most 36.
std::pair<QuantumPotentials, double> brute_dual_ascent_quantum(const QuantumProblem& prob,
                                                               const OracleConfig& cfg = {});

// Central-difference gradient of a functional over tuples of Hermitian
// operators, probed along the diagonal, real-symmetric and
// imaginary-antisymmetric matrix units.  Component j satisfies
// d/dt f(u + t V_j) = <out[j], V_j> for Hermitian V_j.  Raises OracleFailure
// if f returns a non-finite value at any probe point.
std::vector<HermitianOperator> fd_gradient(
    const std::function<double(const std::vector<HermitianOperator>&)>& f,
    const std::vector<HermitianOperator>& u, double fd_step = 1e-5);

// Embeds a discrete problem as a commuting quantum one: H = diag(cost) in
// the row-major product basis, gamma_i = diag(weights_i), reference factors
// diag(ref_weights_i).  Solving the image reproduces the diagonal of the
// preimage's plan.
QuantumProblem diagonal_bridge(const ClassicalProblem& prob);

}  // namespace eot
