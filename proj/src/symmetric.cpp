#include "eot/symmetric.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "eot/eigh.hpp"
#include "eot/log.hpp"
#include "eot/matfun.hpp"
#include "eot/quantum.hpp"
#include "eot/tensor_ops.hpp"

namespace eot {
namespace {

std::vector<int> uniform_dims(int d, int particles) {
  if (d < 1) throw InvalidInput("SymmetricProblem: one-particle dimension must be >= 1");
  if (particles < 1) throw InvalidInput("SymmetricProblem: particle count must be >= 1");
  return std::vector<int>(particles, d);
}

double binom(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double b = 1.0;
  for (int i = 0; i < k; ++i) b = b * (n - i) / (i + 1);
  return b;
}

void check_exponent_cap(double max_eig, double eps, const char* who) {
  if (max_eig > kExpCap * eps)
    throw NumericalOverflow(std::string(who) + ": exponent eigenvalue " +
                            std::to_string(max_eig / eps) + " exceeds the cap " +
                            std::to_string(kExpCap));
}

double trace_exp_scaled(const std::vector<double>& vals, double eps) {
  const double top = vals.back();
  double s = 0.0;
  for (double v : vals) s += std::exp((v - top) / eps);
  return std::exp(top / eps + std::log(s));
}

// Compressed dual exponent A_sub = Q^dagger ((1/N)(+)U - H) Q.
HermitianOperator dual_exponent_sub(const HermitianOperator& u, const SymmetricProblem& prob) {
  if (u.dim() != prob.d)
    throw InvalidInput("symmetric dual: U has dimension " + std::to_string(u.dim()) +
                       ", expected " + std::to_string(prob.d));
  HermitianOperator a = kron_sum(std::vector<HermitianOperator>(prob.particles, u));
  a *= 1.0 / prob.particles;
  a -= prob.h;
  return HermitianOperator::hermitized(compress(prob.iso, a.mat()));
}

struct Eval {
  HermitianOperator marginal;  // gamma_hat(U)
  double dual;
  double residual;  // trace norm of gamma - gamma_hat
};

Eval evaluate(const HermitianOperator& u, const SymmetricProblem& prob) {
  const HermitianOperator a_sub = dual_exponent_sub(u, prob);
  const EighResult e = eigh(a_sub.mat());
  check_exponent_cap(e.values.back(), prob.eps, "solve_symmetric");
  const double inv_eps = 1.0 / prob.eps;
  const HermitianOperator gamma_sub =
      spectral_synthesis(e, [inv_eps](double x) { return std::exp(x * inv_eps); });
  const HermitianOperator full = HermitianOperator::hermitized(expand(prob.iso, gamma_sub.mat()));
  Eval out{partial_trace(full, prob.space, 0), 0.0, 0.0};
  out.dual = herm_inner(u, prob.gamma.op()) -
             prob.eps * trace_exp_scaled(e.values, prob.eps) + prob.eps;
  out.residual = trace_norm(prob.gamma.op() - out.marginal);
  return out;
}

// Golden-section maximisation of the concave t -> dual(u + t dir) on [0, 2].
double line_search(const HermitianOperator& u, const HermitianOperator& dir,
                   const SymmetricProblem& prob) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = 0.0, hi = 2.0;
  auto value = [&](double t) { return evaluate(u + t * dir, prob).dual; };
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

const char* class_name(PauliClass c) {
  switch (c) {
    case PauliClass::violates: return "violates";
    case PauliClass::boundary: return "boundary";
    default: return "strict";
  }
}

}  // namespace

SymmetricProblem::SymmetricProblem(int d_in, int particles_in, Statistics stat_in,
                                   HermitianOperator h_in, double eps_in,
                                   DensityMatrix gamma_in)
    : d(d_in),
      particles(particles_in),
      stat(stat_in),
      eps(eps_in),
      h(std::move(h_in)),
      gamma(std::move(gamma_in)),
      space(uniform_dims(d, particles)),
      iso(sym_isometry(d, particles, stat)) {
  if (eps <= 0.0) throw InvalidInput("SymmetricProblem: eps must be positive");
  if (gamma.dim() != d)
    throw InvalidInput("SymmetricProblem: marginal has dimension " +
                       std::to_string(gamma.dim()) + ", expected " + std::to_string(d));
  if (h.dim() != space.total_dim)
    throw InvalidInput("SymmetricProblem: H has dimension " + std::to_string(h.dim()) +
                       ", expected " + std::to_string(space.total_dim));
  if (!check_h_symmetric(h, d, particles))
    throw InvalidInput("SymmetricProblem: H is not exchange-symmetric");
}

bool check_h_symmetric(const HermitianOperator& h, int d, int particles) {
  const ProductSpace space(uniform_dims(d, particles));
  if (h.dim() != space.total_dim)
    throw InvalidInput("check_h_symmetric: H has dimension " + std::to_string(h.dim()) +
                       ", expected " + std::to_string(space.total_dim));
  for (int i = 0; i + 1 < particles; ++i) {
    if (op_norm(permute_conjugate(h, space, i) - h) >= 1e-10) return false;
  }
  return true;
}

PauliStatus pauli_check(const DensityMatrix& gamma, int particles, double tol) {
  if (particles < 1) throw InvalidInput("pauli_check: particle count must be >= 1");
  const std::vector<double> vals = eigh_values(gamma.mat());
  PauliStatus status;
  status.max_eig = vals.back();
  status.min_eig = vals.front();
  const double cap = 1.0 / particles;
  if (status.max_eig > cap + tol)
    status.classification = PauliClass::violates;
  else if (status.max_eig < cap - tol && status.min_eig > tol)
    status.classification = PauliClass::strict;
  else
    status.classification = PauliClass::boundary;
  return status;
}

PauliWitness pauli_witness(const DensityMatrix& gamma, int particles, int strength,
                           double h_op_norm, double eps) {
  if (strength < 1) throw InvalidInput("pauli_witness: strength must be >= 1");
  if (eps <= 0.0) throw InvalidInput("pauli_witness: eps must be positive");
  const PauliStatus status = pauli_check(gamma, particles);
  if (status.classification != PauliClass::violates)
    throw InvalidInput("pauli_witness: top eigenvalue " + std::to_string(status.max_eig) +
                       " does not exceed 1/" + std::to_string(particles) +
                       "; nothing to certify");

  // In gamma's eigenbasis: +n on the top eigenvector, -n/(N-1) elsewhere.
  const EighResult e = eigh(gamma.mat());
  const int d = gamma.dim();
  const double off = -static_cast<double>(strength) / (particles - 1);
  CMatrix m(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = r; c < d; ++c) {
      cplx s = 0.0;
      for (int k = 0; k < d; ++k) {
        const double w = (k == d - 1) ? static_cast<double>(strength) : off;
        s += e.vectors(r, k) * w * std::conj(e.vectors(c, k));
      }
      m(r, c) = s;
      if (c != r) m(c, r) = std::conj(s);
    }

  PauliWitness out{HermitianOperator::hermitized(std::move(m)), 0.0, 0.0, 0.0};
  out.linear_part = strength * (particles * status.max_eig - 1.0) / (particles - 1);
  out.c_bound = eps * std::exp(h_op_norm / eps);
  out.lower_bound = out.linear_part - out.c_bound * binom(d, particles);
  return out;
}

double sym_dual_value(const HermitianOperator& u, const SymmetricProblem& prob) {
  const HermitianOperator a_sub = dual_exponent_sub(u, prob);
  const std::vector<double> vals = eigh_values(a_sub.mat());
  check_exponent_cap(vals.back(), prob.eps, "sym_dual_value");
  return herm_inner(u, prob.gamma.op()) - prob.eps * trace_exp_scaled(vals, prob.eps) +
         prob.eps;
}

HermitianOperator sym_marginal(const HermitianOperator& u, const SymmetricProblem& prob) {
  return evaluate(u, prob).marginal;
}

DensityMatrix embed_symmetric_state(const DensityMatrix& gamma_sub,
                                    const SubspaceIsometry& iso) {
  if (gamma_sub.dim() != iso.sub_dim)
    throw InvalidInput("embed_symmetric_state: state has dimension " +
                       std::to_string(gamma_sub.dim()) + ", subspace has " +
                       std::to_string(iso.sub_dim));
  return DensityMatrix(HermitianOperator::hermitized(expand(iso, gamma_sub.mat())));
}

double sym_primal_value(const DensityMatrix& gamma_sub, const SymmetricProblem& prob) {
  if (gamma_sub.dim() != prob.iso.sub_dim)
    throw InvalidInput("sym_primal_value: state dimension mismatch");
  const HermitianOperator h_sub =
      HermitianOperator::hermitized(compress(prob.iso, prob.h.mat()));
  return herm_inner(h_sub, gamma_sub.op()) +
         prob.eps * umegaki(gamma_sub, HermitianOperator::identity(prob.iso.sub_dim));
}

DensityMatrix shrink_to_interior(const DensityMatrix& gamma, double delta) {
  if (delta <= 0.0 || delta >= 1.0)
    throw InvalidInput("shrink_to_interior: delta must lie in (0, 1)");
  HermitianOperator mixed = gamma.op();
  mixed *= 1.0 - delta;
  HermitianOperator id = HermitianOperator::identity(gamma.dim());
  id *= delta / gamma.dim();
  mixed += id;
  return DensityMatrix(std::move(mixed));
}

SymmetricSolution solve_symmetric(const SymmetricProblem& prob, double tol, int max_iter) {
  if (tol <= 0.0) throw InvalidInput("solve_symmetric: tol must be positive");
  if (max_iter < 1) throw InvalidInput("solve_symmetric: max_iter must be >= 1");

  if (prob.stat == Statistics::fermions) {
    const PauliStatus status = pauli_check(prob.gamma, prob.particles);
    if (status.classification != PauliClass::strict)
      throw PauliViolation(
          std::string("solve_symmetric: fermionic marginal is not strictly admissible (") +
              class_name(status.classification) + ", top eigenvalue " +
              std::to_string(status.max_eig) + " vs 1/" + std::to_string(prob.particles) +
              ", bottom " + std::to_string(status.min_eig) + ")",
          status);
  } else {
    const std::vector<double> vals = eigh_values(prob.gamma.mat());
    if (vals.front() <= 1e-12)
      throw InvalidInput("solve_symmetric: bosonic marginal must be strictly positive");
  }

  const HermitianOperator log_gamma = mat_log(prob.gamma.op());
  HermitianOperator u = prob.eps * log_gamma;

  SolveReport report;
  Eval cur = evaluate(u, prob);
  report.marginal_residuals = {cur.residual};
  report.converged = cur.residual < tol;

  double eta = 1.0;
  int failures = 0;
  for (int it = 1; it <= max_iter && !report.converged; ++it) {
    HermitianOperator dir = log_gamma - mat_log(cur.marginal, 1e-300);
    dir *= prob.eps;
    // <grad, dir> = eps <gamma - gamma_hat, log gamma - log gamma_hat> >= 0,
    // zero only at the fixed point.  Requiring a fraction of it as progress
    // breaks the period-two cycles the undamped update falls into when the
    // marginal sits close to the admissible boundary.
    const double ascent = herm_inner(prob.gamma.op() - cur.marginal, dir);
    const double slack = 1e-15 * (1.0 + std::abs(cur.dual));

    if (failures > 50) {
      const double t = line_search(u, dir, prob);
      u += t * dir;
      cur = evaluate(u, prob);
    } else {
      while (true) {
        const HermitianOperator cand = u + eta * dir;
        const Eval trial = evaluate(cand, prob);
        if (trial.dual + slack >= cur.dual + 1e-4 * eta * ascent) {
          u = cand;
          cur = trial;
          eta = std::min(1.0, 2.0 * eta);
          break;
        }
        eta *= 0.5;
        if (++failures > 50) {
          const double t = line_search(u, dir, prob);
          u += t * dir;
          cur = evaluate(u, prob);
          break;
        }
      }
    }

    report.marginal_residuals = {cur.residual};
    report.iterations = it;
    SweepRecord rec;
    rec.sweep = it;
    rec.dual = cur.dual;
    rec.residuals = report.marginal_residuals;
    report.trace.push_back(rec);
    if (cur.residual < tol) report.converged = true;
  }

  log::info("solve_symmetric: ", report.converged ? "converged" : "NOT converged", " after ",
            report.iterations, " iterations");

  // Rebuild the subspace state once more and normalise its trace.
  const HermitianOperator a_sub = dual_exponent_sub(u, prob);
  const EighResult e = eigh(a_sub.mat());
  check_exponent_cap(e.values.back(), prob.eps, "solve_symmetric");
  const double inv_eps = 1.0 / prob.eps;
  HermitianOperator gamma_sub =
      spectral_synthesis(e, [inv_eps](double x) { return std::exp(x * inv_eps); });
  gamma_sub *= 1.0 / gamma_sub.trace();

  SymmetricSolution sol{DensityMatrix(std::move(gamma_sub)), std::move(u),
                        std::move(report)};
  sol.report.dual = sym_dual_value(sol.potential, prob);
  sol.report.primal = sym_primal_value(sol.plan_sub, prob);
  sol.report.gap = sol.report.primal - sol.report.dual;
  return sol;
}

}  // namespace eot
