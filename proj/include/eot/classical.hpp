#pragma once

#include <vector>

#include "eot/ndarray.hpp"
#include "eot/report.hpp"

namespace eot {

// Probability weights with a strictly positive reference measure on the same
// points.  Weights must be strictly positive (finite-entropy requirement);
// prune zero-mass points before constructing.
struct DiscreteMeasure {
  DiscreteMeasure(std::vector<double> weights_in, std::vector<double> ref_weights_in);
  int size() const { return static_cast<int>(weights.size()); }

  std::vector<double> weights;
  std::vector<double> ref_weights;
};

// One potential vector per marginal.
struct ClassicalPotentials {
  std::vector<std::vector<double>> phi;
};

// Nonnegative N-way array with total mass 1 (within 1e-10).
struct Coupling {
  explicit Coupling(NdArray values_in);
  NdArray values;
};

// Cost tensor + regularisation + marginals; dims must agree.
struct ClassicalProblem {
  ClassicalProblem(NdArray cost_in, double eps_in, std::vector<DiscreteMeasure> marginals_in);
  int axes() const { return cost.naxes(); }

  NdArray cost;
  double eps;
  std::vector<DiscreteMeasure> marginals;
};

// Sum pi log(pi/sigma) with 0 log 0 := 0; sigma must be positive entrywise.
double rel_entropy(const NdArray& pi, const NdArray& sigma);

// Entrywise e^{-c/eps} * prod_i refs_i(x_i).
NdArray gibbs_kernel(const NdArray& cost, double eps,
                     const std::vector<std::vector<double>>& refs);

// Product reference measure sigma(x) = prod_i ref_i(x_i).
NdArray product_reference(const ClassicalProblem& prob);

// pi(x) = exp((sum_i phi_i(x_i) - c(x))/eps) * sigma(x).
NdArray plan_from_potentials(const ClassicalPotentials& phi, const ClassicalProblem& prob);

// Exact coordinate maximiser in slot j:
//   x_j -> -eps log( sum over the slice of exp((sum_{i!=j} phi_i - c)/eps)
//                    * prod_{i!=j} ref_i )  + eps log(mu_j / ref_j).
// Afterwards marginal j of the plan equals mu_j.
std::vector<double> c_eps_transform(int j, const ClassicalPotentials& phi,
                                    const ClassicalProblem& prob);

// Unregularised c-transform (the eps -> 0 limit), for reference only; the
// solver never calls it.
std::vector<double> c_transform_plain(int j, const ClassicalPotentials& phi,
                                      const NdArray& cost);

double primal_value(const Coupling& plan, const ClassicalProblem& prob);
double dual_value(const ClassicalPotentials& phi, const ClassicalProblem& prob);

struct ClassicalSolution {
  Coupling plan;
  ClassicalPotentials potentials;
  SolveReport report;
};

// Cyclic exact coordinate ascent (sweep order j = 0..N-1), potentials
// centred after each sweep; stops when the max L1 marginal residual of the
// current plan drops below tol.
ClassicalSolution sinkhorn_classical(const ClassicalProblem& prob, double tol = 1e-10,
                                     int max_iter = 10000);

}  // namespace eot
