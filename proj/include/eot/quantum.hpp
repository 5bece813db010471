#pragma once

#include <vector>

#include "eot/hermitian.hpp"
#include "eot/report.hpp"

namespace eot {

// Density-matrix transport problem: minimise Tr(H Gamma) + eps S(Gamma | m)
// over states Gamma whose factor marginals are the given gamma_i, where
// m = (x) ref_i and S is the Umegaki relative entropy.  The reference enters
// every computation through the effective Hamiltonian H - eps log m, built
// once here.
struct QuantumProblem {
  QuantumProblem(HermitianOperator h_in, double eps_in,
                 std::vector<DensityMatrix> marginals_in,
                 std::vector<HermitianOperator> ref_in = {});

  ProductSpace space;
  HermitianOperator h;
  double eps;
  std::vector<DensityMatrix> marginals;  // each strictly positive definite
  std::vector<HermitianOperator> ref;    // positive definite; identity by default

  HermitianOperator h_eff;                      // h - eps * sum_i embed(log ref_i)
  std::vector<HermitianOperator> log_marginals; // log gamma_i, cached

  int factors() const { return space.factors(); }
};

// Dual variables: one Hermitian operator per factor.
struct QuantumPotentials {
  std::vector<HermitianOperator> u;
};

struct QuantumSolution {
  DensityMatrix plan;
  QuantumPotentials potentials;
  SolveReport report;
};

// Relative entropy Tr(Gamma (log Gamma - log m)).  Zero eigenvalues of Gamma
// contribute 0 log 0 := 0, but only when m is a multiple of the identity;
// otherwise a singular Gamma raises SingularOperator.
double umegaki(const DensityMatrix& gamma, const HermitianOperator& m);

// Gamma(U) = exp((U_1 (+) ... (+) U_N - H_eff)/eps); not normalised away
// from the optimum.  Raises NumericalOverflow when the top eigenvalue of the
// exponent exceeds 700*eps.
HermitianOperator gamma_from_potentials(const QuantumPotentials& u,
                                        const QuantumProblem& prob);

// sum_i Tr(U_i gamma_i) - eps Tr Gamma(U) + eps.
double nc_dual_value(const QuantumPotentials& u, const QuantumProblem& prob);

// Component j: gamma_j - partial_trace(Gamma(U), j); zero at the optimum.
std::vector<HermitianOperator> nc_dual_gradient(const QuantumPotentials& u,
                                                const QuantumProblem& prob);

// Exact maximiser of the dual in slot j (all other slots fixed): the unique
// V with partial_trace(Gamma(U with slot j <- V), j) = gamma_j to inner_tol
// in trace norm.  Damped fixed-point iteration
//   V <- V + eta * eps (log gamma_j - log P_j Gamma(V)),
// eta halved whenever a step would lower the dual, with an exact line search
// fallback once damping has failed 50 times.  Raises InnerSolverFailure
// (carrying the residual) after inner_max iterations.
HermitianOperator h_eps_transform(int j, const QuantumPotentials& u,
                                  const QuantumProblem& prob, double inner_tol = 1e-10,
                                  int inner_max = 500);

// Shifts U_i by alpha_i * identity with sum alpha_i = 0, choosing
// alpha_i = mean(s) - s_i for s_i = Tr(U_i - eps log gamma_i)/d_i.  Leaves
// the Kronecker sum, Gamma(U) and the dual value unchanged; idempotent.
QuantumPotentials renormalize(const QuantumPotentials& u, const QuantumProblem& prob);

// One full cycle of slot updates j = 0..N-1 (no renormalisation).
QuantumPotentials sinkhorn_sweep(QuantumPotentials u, const QuantumProblem& prob,
                                 double inner_tol = 1e-10, int inner_max = 500);

// Tr(H Gamma) + eps * umegaki(Gamma, (x) ref_i), with the original H.
double nc_primal_value(const DensityMatrix& gamma, const QuantumProblem& prob);

// Coordinate ascent on the dual: sweeps of h_eps_transform followed by
// renormalize, starting from U_i = eps log gamma_i, until the largest
// trace-norm marginal residual of Gamma(U) drops below tol.  The returned
// plan is Gamma(U) scaled to unit trace.
QuantumSolution sinkhorn_quantum(const QuantumProblem& prob, double tol = 1e-8,
                                 int max_iter = 10000, double inner_tol = 1e-10,
                                 int inner_max = 500);

}  // namespace eot
