#include "eot/classical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "eot/errors.hpp"
#include "eot/log.hpp"

namespace eot {
namespace {

void check_finite(const std::vector<double>& v, const char* who) {
  for (double x : v) {
    if (!std::isfinite(x)) throw InvalidInput(std::string(who) + ": non-finite entry");
  }
}

std::vector<std::vector<double>> ref_vectors(const ClassicalProblem& prob) {
  std::vector<std::vector<double>> refs;
  refs.reserve(prob.marginals.size());
  for (const DiscreteMeasure& m : prob.marginals) refs.push_back(m.ref_weights);
  return refs;
}

// Per-axis additive term phi_i/eps + log ref_i used by the log-domain field.
std::vector<std::vector<double>> field_adds(const ClassicalPotentials& phi,
                                            const ClassicalProblem& prob, int skip_axis) {
  std::vector<std::vector<double>> add(prob.axes());
  for (int i = 0; i < prob.axes(); ++i) {
    const int len = prob.marginals[i].size();
    add[i].assign(len, 0.0);
    if (i == skip_axis) continue;
    for (int m = 0; m < len; ++m)
      add[i][m] = phi.phi[i][m] / prob.eps + std::log(prob.marginals[i].ref_weights[m]);
  }
  return add;
}

void check_potentials(const ClassicalPotentials& phi, const ClassicalProblem& prob) {
  if (static_cast<int>(phi.phi.size()) != prob.axes())
    throw InvalidInput("potentials: expected one vector per marginal");
  for (int i = 0; i < prob.axes(); ++i) {
    if (static_cast<int>(phi.phi[i].size()) != prob.marginals[i].size())
      throw InvalidInput("potentials: phi[" + std::to_string(i) + "] length mismatch");
    check_finite(phi.phi[i], "potentials");
  }
}

}  // namespace

DiscreteMeasure::DiscreteMeasure(std::vector<double> weights_in,
                                 std::vector<double> ref_weights_in)
    : weights(std::move(weights_in)), ref_weights(std::move(ref_weights_in)) {
  if (weights.empty()) throw InvalidInput("DiscreteMeasure: empty support");
  if (weights.size() != ref_weights.size())
    throw InvalidInput("DiscreteMeasure: weights and ref_weights lengths differ");
  check_finite(weights, "DiscreteMeasure weights");
  check_finite(ref_weights, "DiscreteMeasure ref_weights");
  double total = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0)
      throw InvalidInput("DiscreteMeasure: weight at index " + std::to_string(i) +
                         " is not strictly positive (prune zero-mass points first)");
    if (ref_weights[i] <= 0.0)
      throw InvalidInput("DiscreteMeasure: ref weight at index " + std::to_string(i) +
                         " is not strictly positive");
    total += weights[i];
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw InvalidInput("DiscreteMeasure: weights sum to " + std::to_string(total) +
                       ", expected 1");
}

Coupling::Coupling(NdArray values_in) : values(std::move(values_in)) {
  double total = 0.0;
  for (double x : values.v) {
    if (!(x >= 0.0)) throw InvalidInput("Coupling: negative or NaN entry");
    total += x;
  }
  if (std::abs(total - 1.0) > 1e-10)
    throw InvalidInput("Coupling: total mass " + std::to_string(total) + ", expected 1");
}

ClassicalProblem::ClassicalProblem(NdArray cost_in, double eps_in,
                                   std::vector<DiscreteMeasure> marginals_in)
    : cost(std::move(cost_in)), eps(eps_in), marginals(std::move(marginals_in)) {
  if (eps <= 0.0) throw InvalidInput("ClassicalProblem: eps must be positive");
  if (marginals.size() != cost.dims.size())
    throw InvalidInput("ClassicalProblem: " + std::to_string(marginals.size()) +
                       " marginals for a " + std::to_string(cost.dims.size()) +
                       "-way cost tensor");
  for (std::size_t i = 0; i < marginals.size(); ++i) {
    if (marginals[i].size() != cost.dims[i])
      throw InvalidInput("ClassicalProblem: marginal " + std::to_string(i) + " has " +
                         std::to_string(marginals[i].size()) + " points, cost axis has " +
                         std::to_string(cost.dims[i]));
  }
  check_finite(cost.v, "ClassicalProblem cost");
}

double rel_entropy(const NdArray& pi, const NdArray& sigma) {
  if (pi.dims != sigma.dims) throw InvalidInput("rel_entropy: shape mismatch");
  double s = 0.0;
  for (int x = 0; x < pi.size(); ++x) {
    const double p = pi.v[x];
    const double q = sigma.v[x];
    if (q <= 0.0) throw InvalidInput("rel_entropy: reference has a nonpositive entry");
    if (p < 0.0) throw InvalidInput("rel_entropy: negative plan entry");
    if (p > 0.0) s += p * std::log(p / q);
  }
  return s;
}

NdArray gibbs_kernel(const NdArray& cost, double eps,
                     const std::vector<std::vector<double>>& refs) {
  if (eps <= 0.0) throw InvalidInput("gibbs_kernel: eps must be positive");
  std::vector<std::vector<double>> add(refs.size());
  for (std::size_t i = 0; i < refs.size(); ++i) {
    add[i].resize(refs[i].size());
    for (std::size_t m = 0; m < refs[i].size(); ++m) {
      if (refs[i][m] <= 0.0) throw InvalidInput("gibbs_kernel: refs must be positive");
      add[i][m] = std::log(refs[i][m]);
    }
  }
  NdArray out = log_plan_field(cost, eps, add);
  for (double& x : out.v) x = std::exp(x);
  return out;
}

NdArray product_reference(const ClassicalProblem& prob) {
  NdArray zero_cost(prob.cost.dims);
  return gibbs_kernel(zero_cost, 1.0, ref_vectors(prob));
}

NdArray plan_from_potentials(const ClassicalPotentials& phi, const ClassicalProblem& prob) {
  check_potentials(phi, prob);
  NdArray out = log_plan_field(prob.cost, prob.eps, field_adds(phi, prob, -1));
  for (double& x : out.v) x = std::exp(x);
  return out;
}

std::vector<double> c_eps_transform(int j, const ClassicalPotentials& phi,
                                    const ClassicalProblem& prob) {
  check_potentials(phi, prob);
  if (j < 0 || j >= prob.axes())
    throw InvalidInput("c_eps_transform: axis " + std::to_string(j) + " out of range");
  const NdArray field = log_plan_field(prob.cost, prob.eps, field_adds(phi, prob, j));
  const std::vector<double> lse = axis_logsumexp(field, j);
  const DiscreteMeasure& mu = prob.marginals[j];
  std::vector<double> out(mu.size());
  for (int m = 0; m < mu.size(); ++m) {
    out[m] = -prob.eps * lse[m] +
             prob.eps * (std::log(mu.weights[m]) - std::log(mu.ref_weights[m]));
  }
  return out;
}

std::vector<double> c_transform_plain(int j, const ClassicalPotentials& phi,
                                      const NdArray& cost) {
  if (j < 0 || j >= cost.naxes())
    throw InvalidInput("c_transform_plain: axis out of range");
  if (phi.phi.size() != cost.dims.size())
    throw InvalidInput("c_transform_plain: need one potential per axis");
  // inf over the slice of c(x) - sum_{i != j} phi_i(x_i)
  const int dj = cost.dims[j];
  std::vector<double> out(dj, std::numeric_limits<double>::infinity());
  std::vector<int> multi(cost.naxes(), 0);
  for (int x = 0; x < cost.size(); ++x) {
    int rem = x;
    for (int i = cost.naxes() - 1; i >= 0; --i) {
      multi[i] = rem % cost.dims[i];
      rem /= cost.dims[i];
    }
    double val = cost.v[x];
    for (int i = 0; i < cost.naxes(); ++i)
      if (i != j) val -= phi.phi[i][multi[i]];
    out[multi[j]] = std::min(out[multi[j]], val);
  }
  return out;
}

double primal_value(const Coupling& plan, const ClassicalProblem& prob) {
  if (plan.values.dims != prob.cost.dims) throw InvalidInput("primal_value: shape mismatch");
  double cost_part = 0.0;
  for (int x = 0; x < prob.cost.size(); ++x) cost_part += prob.cost.v[x] * plan.values.v[x];
  return cost_part + prob.eps * rel_entropy(plan.values, product_reference(prob));
}

double dual_value(const ClassicalPotentials& phi, const ClassicalProblem& prob) {
  check_potentials(phi, prob);
  double linear = 0.0;
  for (int i = 0; i < prob.axes(); ++i)
    for (int m = 0; m < prob.marginals[i].size(); ++m)
      linear += phi.phi[i][m] * prob.marginals[i].weights[m];
  const NdArray field = log_plan_field(prob.cost, prob.eps, field_adds(phi, prob, -1));
  return linear - prob.eps * std::exp(total_logsumexp(field)) + prob.eps;
}

ClassicalSolution sinkhorn_classical(const ClassicalProblem& prob, double tol, int max_iter) {
  if (tol <= 0.0) throw InvalidInput("sinkhorn_classical: tol must be positive");
  if (max_iter < 1) throw InvalidInput("sinkhorn_classical: max_iter must be >= 1");
  const int n = prob.axes();

  ClassicalPotentials phi;
  phi.phi.resize(n);
  for (int i = 0; i < n; ++i) phi.phi[i].assign(prob.marginals[i].size(), 0.0);

  SolveReport report;
  report.marginal_residuals.assign(n, std::numeric_limits<double>::infinity());

  NdArray plan;
  for (int sweep = 1; sweep <= max_iter; ++sweep) {
    for (int j = 0; j < n; ++j) phi.phi[j] = c_eps_transform(j, phi, prob);

    // Centre the potentials: phi_i += mean(s) - s_i with s_i = <mu_i, phi_i>.
    // Leaves the plan and the dual value unchanged (translation invariance).
    std::vector<double> s(n, 0.0);
    double mean = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int m = 0; m < prob.marginals[i].size(); ++m)
        s[i] += prob.marginals[i].weights[m] * phi.phi[i][m];
      mean += s[i] / n;
    }
    for (int i = 0; i < n; ++i)
      for (double& x : phi.phi[i]) x += mean - s[i];

    plan = plan_from_potentials(phi, prob);
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      const std::vector<double> marg = axis_sum(plan, i);
      double res = 0.0;
      for (int m = 0; m < prob.marginals[i].size(); ++m)
        res += std::abs(marg[m] - prob.marginals[i].weights[m]);
      report.marginal_residuals[i] = res;
      worst = std::max(worst, res);
    }
    report.iterations = sweep;

    SweepRecord rec;
    rec.sweep = sweep;
    rec.dual = dual_value(phi, prob);
    rec.residuals = report.marginal_residuals;
    report.trace.push_back(rec);

    if (worst < tol) {
      report.converged = true;
      break;
    }
  }

  log::info("sinkhorn_classical: ", report.converged ? "converged" : "NOT converged", " after ",
            report.iterations, " sweeps");

  ClassicalSolution sol{Coupling(std::move(plan)), std::move(phi), std::move(report)};
  sol.report.dual = dual_value(sol.potentials, prob);
  sol.report.primal = primal_value(sol.plan, prob);
  sol.report.gap = sol.report.primal - sol.report.dual;
  return sol;
}

}  // namespace eot
