#include "eot/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "eot/eigh.hpp"
#include "eot/errors.hpp"
#include "eot/log.hpp"
#include "eot/matfun.hpp"
#include "eot/tensor_ops.hpp"

namespace eot {
namespace {

std::vector<int> marginal_dims(const std::vector<DensityMatrix>& marginals) {
  if (marginals.empty()) throw InvalidInput("QuantumProblem: needs at least one marginal");
  std::vector<int> dims;
  dims.reserve(marginals.size());
  for (const DensityMatrix& g : marginals) dims.push_back(g.dim());
  return dims;
}

void check_potentials(const QuantumPotentials& u, const QuantumProblem& prob) {
  if (static_cast<int>(u.u.size()) != prob.factors())
    throw InvalidInput("potentials: expected one operator per factor");
  for (int i = 0; i < prob.factors(); ++i) {
    if (u.u[i].dim() != prob.space.dims[i])
      throw InvalidInput("potentials: U[" + std::to_string(i) + "] has dimension " +
                         std::to_string(u.u[i].dim()) + ", factor has " +
                         std::to_string(prob.space.dims[i]));
  }
}

// True when m is c * identity within 1e-12 relative tolerance.
bool is_scaled_identity(const HermitianOperator& m, double* scale) {
  const int d = m.dim();
  const double c = m.trace() / d;
  CMatrix diff = m.mat();
  for (int i = 0; i < d; ++i) diff(i, i) -= c;
  *scale = c;
  return diff.max_abs() <= 1e-12 * std::max(std::abs(c), 1.0);
}

// Exponent of the plan map, A = (+)U_i - H_eff.
HermitianOperator dual_exponent(const QuantumPotentials& u, const QuantumProblem& prob) {
  HermitianOperator a = kron_sum(u.u);
  a -= prob.h_eff;
  return a;
}

void check_exponent_cap(double max_eig, double eps, const char* who) {
  if (max_eig > kExpCap * eps)
    throw NumericalOverflow(std::string(who) + ": exponent eigenvalue " +
                            std::to_string(max_eig / eps) + " exceeds the cap " +
                            std::to_string(kExpCap));
}

// sum_i exp(lambda_i / eps), max-shifted (safe given the cap check).
double trace_exp_scaled(const std::vector<double>& vals, double eps) {
  const double top = vals.back();
  double s = 0.0;
  for (double v : vals) s += std::exp((v - top) / eps);
  return std::exp(top / eps + std::log(s));
}

double linear_term(const QuantumPotentials& u, const QuantumProblem& prob) {
  double s = 0.0;
  for (int i = 0; i < prob.factors(); ++i) s += herm_inner(u.u[i], prob.marginals[i].op());
  return s;
}

// Everything the inner solver needs at one evaluation point, from a single
// diagonalisation of the exponent.
struct SlotEval {
  HermitianOperator marginal_j;  // P_j Gamma(U)
  double dual;
  double residual;  // trace norm of gamma_j - marginal_j
};

SlotEval eval_slot(int j, const QuantumPotentials& u, const QuantumProblem& prob) {
  const HermitianOperator a = dual_exponent(u, prob);
  const EighResult e = eigh(a.mat());
  check_exponent_cap(e.values.back(), prob.eps, "h_eps_transform");
  const double inv_eps = 1.0 / prob.eps;
  const HermitianOperator gamma =
      spectral_synthesis(e, [inv_eps](double x) { return std::exp(x * inv_eps); });
  SlotEval out{partial_trace(gamma, prob.space, j), 0.0, 0.0};
  out.dual = linear_term(u, prob) - prob.eps * trace_exp_scaled(e.values, prob.eps) + prob.eps;
  out.residual = trace_norm(prob.marginals[j].op() - out.marginal_j);
  return out;
}

// Concave single-variable maximisation of t -> dual(V + t D) by golden
// section on [0, 2]; used only when damped fixed-point steps keep failing.
double line_search(int j, QuantumPotentials& u, const HermitianOperator& v,
                   const HermitianOperator& dir, const QuantumProblem& prob) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = 0.0, hi = 2.0;
  auto value = [&](double t) {
    u.u[j] = v + t * dir;
    return eval_slot(j, u, prob).dual;
  };
  double t1 = hi - phi * (hi - lo), t2 = lo + phi * (hi - lo);
  double f1 = value(t1), f2 = value(t2);
  for (int it = 0; it < 120 && hi - lo > 1e-14; ++it) {
    if (f1 < f2) {
      lo = t1;
      t1 = t2;
      f1 = f2;
      t2 = lo + phi * (hi - lo);
      f2 = value(t2);
    } else {
      hi = t2;
      t2 = t1;
      f2 = f1;
      t1 = hi - phi * (hi - lo);
      f1 = value(t1);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

QuantumProblem::QuantumProblem(HermitianOperator h_in, double eps_in,
                               std::vector<DensityMatrix> marginals_in,
                               std::vector<HermitianOperator> ref_in)
    : space(marginal_dims(marginals_in)),
      h(std::move(h_in)),
      eps(eps_in),
      marginals(std::move(marginals_in)),
      ref(std::move(ref_in)),
      h_eff(h) {
  if (eps <= 0.0) throw InvalidInput("QuantumProblem: eps must be positive");
  if (h.dim() != space.total_dim)
    throw InvalidInput("QuantumProblem: H has dimension " + std::to_string(h.dim()) +
                       ", product space has " + std::to_string(space.total_dim));
  if (ref.empty()) {
    for (int d : space.dims) ref.push_back(HermitianOperator::identity(d));
  }
  if (ref.size() != marginals.size())
    throw InvalidInput("QuantumProblem: expected one reference operator per marginal");

  for (int i = 0; i < factors(); ++i) {
    const std::vector<double> gvals = eigh_values(marginals[i].mat());
    if (gvals.front() <= 1e-12)
      throw InvalidInput("QuantumProblem: marginal " + std::to_string(i) +
                         " has eigenvalue " + std::to_string(gvals.front()) +
                         "; marginals must be strictly positive definite");
    if (ref[i].dim() != space.dims[i])
      throw InvalidInput("QuantumProblem: reference " + std::to_string(i) +
                         " dimension mismatch");
    const std::vector<double> mvals = eigh_values(ref[i].mat());
    if (mvals.front() <= 1e-12)
      throw InvalidInput("QuantumProblem: reference " + std::to_string(i) +
                         " must be positive definite");
    log_marginals.push_back(mat_log(marginals[i].op()));
    // Fold the reference into the Hamiltonian once: H_eff = H - eps log m.
    HermitianOperator corr = embed(mat_log(ref[i]), space, i);
    corr *= eps;
    h_eff -= corr;
  }
}

double umegaki(const DensityMatrix& gamma, const HermitianOperator& m) {
  if (gamma.dim() != m.dim()) throw InvalidInput("umegaki: dimension mismatch");
  const EighResult e = eigh(gamma.mat());
  double entropy = 0.0;
  for (double lam : e.values)
    if (lam > 0.0) entropy += lam * std::log(lam);

  if (e.values.front() <= 1e-12) {
    double scale = 0.0;
    if (!is_scaled_identity(m, &scale))
      throw SingularOperator(
          "umegaki: state eigenvalue " + std::to_string(e.values.front()) +
              " with a non-scalar reference; 0 log 0 is only defined against c*identity",
          0);
    if (scale <= 0.0)
      throw SingularOperator("umegaki: reference is not positive definite", 0);
    return entropy - std::log(scale);  // Tr(Gamma) log c with Tr = 1
  }
  return entropy - herm_inner(gamma.op(), mat_log(m));
}

HermitianOperator gamma_from_potentials(const QuantumPotentials& u,
                                        const QuantumProblem& prob) {
  check_potentials(u, prob);
  const HermitianOperator a = dual_exponent(u, prob);
  const EighResult e = eigh(a.mat());
  check_exponent_cap(e.values.back(), prob.eps, "gamma_from_potentials");
  const double inv_eps = 1.0 / prob.eps;
  return spectral_synthesis(e, [inv_eps](double x) { return std::exp(x * inv_eps); });
}

double nc_dual_value(const QuantumPotentials& u, const QuantumProblem& prob) {
  check_potentials(u, prob);
  const HermitianOperator a = dual_exponent(u, prob);
  const std::vector<double> vals = eigh_values(a.mat());
  check_exponent_cap(vals.back(), prob.eps, "nc_dual_value");
  return linear_term(u, prob) - prob.eps * trace_exp_scaled(vals, prob.eps) + prob.eps;
}

std::vector<HermitianOperator> nc_dual_gradient(const QuantumPotentials& u,
                                                const QuantumProblem& prob) {
  const HermitianOperator gamma = gamma_from_potentials(u, prob);
  std::vector<HermitianOperator> grad;
  grad.reserve(prob.factors());
  for (int j = 0; j < prob.factors(); ++j)
    grad.push_back(prob.marginals[j].op() - partial_trace(gamma, prob.space, j));
  return grad;
}

HermitianOperator h_eps_transform(int j, const QuantumPotentials& u,
                                  const QuantumProblem& prob, double inner_tol,
                                  int inner_max) {
  check_potentials(u, prob);
  if (j < 0 || j >= prob.factors())
    throw InvalidInput("h_eps_transform: slot " + std::to_string(j) + " out of range");
  if (inner_tol <= 0.0 || inner_max < 1)
    throw InvalidInput("h_eps_transform: inner_tol/inner_max out of range");

  QuantumPotentials cur = u;
  HermitianOperator v = cur.u[j];
  double eta = 1.0;
  int failures = 0;
  double residual = 0.0;

  for (int it = 0; it < inner_max; ++it) {
    cur.u[j] = v;
    const SlotEval at_v = eval_slot(j, cur, prob);
    residual = at_v.residual;
    if (residual < inner_tol) return v;

    // Fixed-point direction; the marginal of Gamma is positive definite, so
    // only hard underflow can make the log fail.
    HermitianOperator dir = prob.log_marginals[j] - mat_log(at_v.marginal_j, 1e-300);
    dir *= prob.eps;

    if (failures > 50) {
      const double t = line_search(j, cur, v, dir, prob);
      v += t * dir;
      continue;
    }
    while (true) {
      cur.u[j] = v + eta * dir;
      const SlotEval cand = eval_slot(j, cur, prob);
      if (cand.dual + 1e-15 * (1.0 + std::abs(at_v.dual)) >= at_v.dual) {
        v = cur.u[j];
        break;
      }
      eta *= 0.5;
      if (++failures > 50) {
        const double t = line_search(j, cur, v, dir, prob);
        v += t * dir;
        break;
      }
    }
  }
  throw InnerSolverFailure("h_eps_transform: slot " + std::to_string(j) + " residual " +
                               std::to_string(residual) + " after " +
                               std::to_string(inner_max) + " iterations",
                           residual);
}

QuantumPotentials renormalize(const QuantumPotentials& u, const QuantumProblem& prob) {
  check_potentials(u, prob);
  const int n = prob.factors();
  std::vector<double> s(n);
  double mean = 0.0;
  for (int i = 0; i < n; ++i) {
    s[i] = (u.u[i].trace() - prob.eps * prob.log_marginals[i].trace()) / prob.space.dims[i];
    mean += s[i] / n;
  }
  QuantumPotentials out = u;
  for (int i = 0; i < n; ++i) {
    HermitianOperator shift = HermitianOperator::identity(prob.space.dims[i]);
    shift *= mean - s[i];
    out.u[i] += shift;
  }
  return out;
}

QuantumPotentials sinkhorn_sweep(QuantumPotentials u, const QuantumProblem& prob,
                                 double inner_tol, int inner_max) {
  for (int j = 0; j < prob.factors(); ++j)
    u.u[j] = h_eps_transform(j, u, prob, inner_tol, inner_max);
  return u;
}

double nc_primal_value(const DensityMatrix& gamma, const QuantumProblem& prob) {
  if (gamma.dim() != prob.space.total_dim)
    throw InvalidInput("nc_primal_value: state dimension mismatch");
  HermitianOperator m_full = prob.ref[0];
  for (int i = 1; i < prob.factors(); ++i) m_full = kron(m_full, prob.ref[i]);
  return herm_inner(prob.h, gamma.op()) + prob.eps * umegaki(gamma, m_full);
}

QuantumSolution sinkhorn_quantum(const QuantumProblem& prob, double tol, int max_iter,
                                 double inner_tol, int inner_max) {
  if (tol <= 0.0) throw InvalidInput("sinkhorn_quantum: tol must be positive");
  if (max_iter < 1) throw InvalidInput("sinkhorn_quantum: max_iter must be >= 1");
  const int n = prob.factors();

  QuantumPotentials u;
  for (int i = 0; i < n; ++i) u.u.push_back(prob.eps * prob.log_marginals[i]);

  SolveReport report;
  report.marginal_residuals.assign(n, 0.0);
  HermitianOperator gamma = HermitianOperator::zero(prob.space.total_dim);

  for (int sweep = 1; sweep <= max_iter; ++sweep) {
    u = renormalize(sinkhorn_sweep(std::move(u), prob, inner_tol, inner_max), prob);

    gamma = gamma_from_potentials(u, prob);
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      const double r =
          trace_norm(prob.marginals[i].op() - partial_trace(gamma, prob.space, i));
      report.marginal_residuals[i] = r;
      worst = std::max(worst, r);
    }
    report.iterations = sweep;

    SweepRecord rec;
    rec.sweep = sweep;
    rec.dual = nc_dual_value(u, prob);
    rec.residuals = report.marginal_residuals;
    report.trace.push_back(rec);

    if (worst < tol) {
      report.converged = true;
      break;
    }
  }

  log::info("sinkhorn_quantum: ", report.converged ? "converged" : "NOT converged", " after ",
            report.iterations, " sweeps");

  // Off-optimum the trace is only 1 + O(residual); scale so the result is a
  // certified density matrix.
  gamma *= 1.0 / gamma.trace();
  QuantumSolution sol{DensityMatrix(std::move(gamma)), std::move(u), std::move(report)};
  sol.report.dual = nc_dual_value(sol.potentials, prob);
  sol.report.primal = nc_primal_value(sol.plan, prob);
  sol.report.gap = sol.report.primal - sol.report.dual;
  return sol;
}

}  // namespace eot
