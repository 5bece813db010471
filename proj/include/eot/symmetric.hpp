#pragma once

#include <vector>

#include "eot/errors.hpp"
#include "eot/hermitian.hpp"
#include "eot/report.hpp"
#include "eot/sym_subspace.hpp"

namespace eot {

// N identical particles on C^d: minimise Tr(H Gamma) + eps Tr(Gamma log Gamma)
// over symmetric (bosons) or antisymmetric (fermions) states Gamma whose
// one-body marginal is gamma.  H must commute with every factor permutation.
struct SymmetricProblem {
  SymmetricProblem(int d_in, int particles_in, Statistics stat_in, HermitianOperator h_in,
                   double eps_in, DensityMatrix gamma_in);

  int d;
  int particles;
  Statistics stat;
  double eps;
  HermitianOperator h;  // on (C^d)^(x particles)
  DensityMatrix gamma;  // on C^d
  ProductSpace space;   // (d, ..., d)
  SubspaceIsometry iso; // columns span the (anti)symmetric subspace
};

// True iff conjugating H by each factor-cycling permutation changes it by
// less than 1e-10 in operator norm.  Those cycles generate the full
// permutation group, so this is invariance under every particle exchange.
bool check_h_symmetric(const HermitianOperator& h, int d, int particles);

// Eigenvalue window test against the fermionic admissibility region
// 0 < gamma < 1/N.
PauliStatus pauli_check(const DensityMatrix& gamma, int particles, double tol = 1e-10);

struct PauliWitness {
  HermitianOperator u;  // on C^d
  double linear_part;   // Tr(U gamma) = (n/(N-1)) (N gamma_1 - 1)
  double c_bound;       // eps * exp(h_op_norm / eps)
  double lower_bound;   // linear_part - c_bound * binom(d, N)
};

// For gamma whose top eigenvalue gamma_1 exceeds 1/N: the dual direction
//   U^n = n |psi_1><psi_1| - (n/(N-1)) sum_{j>=2} |psi_j><psi_j|
// in gamma's eigenbasis.  The fermionic dual value at U^n always exceeds
// lower_bound, and lower_bound grows linearly in the strength n, so the
// dual is unbounded and no admissible fermionic state with marginal gamma
// exists.  Requires pauli_check to classify gamma as violating.
PauliWitness pauli_witness(const DensityMatrix& gamma, int particles, int strength,
                           double h_op_norm, double eps);

// Tr(U gamma) - eps Tr_sub exp(Q^dagger((1/N)(+)U - H)Q / eps) + eps.
double sym_dual_value(const HermitianOperator& u, const SymmetricProblem& prob);

// Common one-body marginal of the (unnormalised) state
// Q exp(A_sub/eps) Q^dagger induced by U; equals gamma at the optimum.
HermitianOperator sym_marginal(const HermitianOperator& u, const SymmetricProblem& prob);

// Q Gamma_sub Q^dagger: a full-space density matrix supported on the
// subspace; all its slot marginals coincide.
DensityMatrix embed_symmetric_state(const DensityMatrix& gamma_sub,
                                    const SubspaceIsometry& iso);

// Tr(H_sub Gamma_sub) + eps Tr(Gamma_sub log Gamma_sub) with
// H_sub = Q^dagger H Q.
double sym_primal_value(const DensityMatrix& gamma_sub, const SymmetricProblem& prob);

// (1 - delta) gamma + delta identity/d: pulls a boundary marginal strictly
// inside the admissible region.  Callers must opt in explicitly; the solver
// itself never shrinks a boundary input silently.
DensityMatrix shrink_to_interior(const DensityMatrix& gamma, double delta = 1e-6);

struct SymmetricSolution {
  DensityMatrix plan_sub;  // state in the subspace basis
  HermitianOperator potential;
  SolveReport report;
};

// Damped fixed-point ascent U <- U + eta eps (log gamma - log gamma_hat(U))
// of the symmetric dual, eta halved on dual decrease with a line-search
// fallback.  Bosons require gamma > 0; fermions additionally require strict
// Pauli admissibility (otherwise PauliViolation carrying the status).
SymmetricSolution solve_symmetric(const SymmetricProblem& prob, double tol = 1e-8,
                                  int max_iter = 10000);

}  // namespace eot
