#include "eot/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "eot/errors.hpp"
#include "eot/log.hpp"
#include "eot/matfun.hpp"

namespace eot {
namespace {

constexpr double kArmijoSlope = 1e-4;
constexpr double kBacktrackFloor = 0x1p-60;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::string short_num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", x);
  return buf;
}

void check_cfg(const OracleConfig& cfg) {
  if (!(cfg.step > 0.0) || cfg.max_iter < 1 || !(cfg.tol > 0.0) || !(cfg.fd_step > 0.0))
    throw InvalidInput("OracleConfig: step, max_iter, tol and fd_step must all be positive");
}

// ---------------------------------------------------------------------------
// Classical: everything below works on flat row-major arrays with an
// odometer over the multi-index, so it shares no code with the solver.

using Potentials = std::vector<std::vector<double>>;

struct FlatInstance {
  const NdArray* cost;
  double eps;
  const Potentials* mu;
  const Potentials* ref;
};

void step_odometer(std::vector<int>& idx, const std::vector<int>& dims) {
  for (int a = static_cast<int>(dims.size()) - 1; a >= 0; --a) {
    if (++idx[a] < dims[a]) return;
    idx[a] = 0;
  }
}

struct FlatEval {
  double value = 0.0;
  Potentials grad;  // mu_i - marginal_i of the current plan
  double grad_sq = 0.0;
  double grad_sup = 0.0;
};

FlatEval flat_evaluate(const FlatInstance& in, const Potentials& phi) {
  const std::vector<int>& dims = in.cost->dims;
  const int n = static_cast<int>(dims.size());
  FlatEval e;
  e.grad = *in.mu;

  double linear = 0.0;
  for (int i = 0; i < n; ++i)
    for (int m = 0; m < dims[i]; ++m) linear += phi[i][m] * (*in.mu)[i][m];

  std::vector<int> idx(n, 0);
  double mass = 0.0;
  for (std::size_t flat = 0; flat < static_cast<std::size_t>(in.cost->size());
       ++flat, step_odometer(idx, dims)) {
    double s = -(*in.cost)[flat];
    double r = 1.0;
    for (int i = 0; i < n; ++i) {
      s += phi[i][idx[i]];
      r *= (*in.ref)[i][idx[i]];
    }
    const double p = std::exp(s / in.eps) * r;
    mass += p;
    for (int i = 0; i < n; ++i) e.grad[i][idx[i]] -= p;
  }
  e.value = linear - in.eps * mass + in.eps;
  if (std::isnan(e.value)) e.value = kNegInf;
  for (int i = 0; i < n; ++i)
    for (int m = 0; m < dims[i]; ++m) {
      e.grad_sq += e.grad[i][m] * e.grad[i][m];
      e.grad_sup = std::max(e.grad_sup, std::abs(e.grad[i][m]));
    }
  return e;
}

// Shared acceptance rule for both ascents.  The Armijo test only means
// something while its required increase sits above the rounding noise of
// the value; below that the comparison is a coin flip on the last ulp, so
// we require instead that the step not grow the gradient norm (and not
// measurably decrease the value).
bool accept_step(double trial_value, double trial_grad_sq, double cur_value,
                 double cur_grad_sq, double t) {
  const double gain = kArmijoSlope * t * cur_grad_sq;
  const double noise = 1e-15 * (1.0 + std::abs(cur_value));
  if (gain > noise) return trial_value >= cur_value + gain;
  return trial_grad_sq <= cur_grad_sq && trial_value >= cur_value - noise;
}

}  // namespace

std::pair<ClassicalPotentials, double> brute_dual_ascent_classical(
    const NdArray& cost, double eps, const std::vector<std::vector<double>>& marginals,
    const std::vector<std::vector<double>>& refs, const OracleConfig& cfg) {
  check_cfg(cfg);
  if (eps <= 0.0) throw InvalidInput("brute_dual_ascent_classical: eps must be positive");
  const int n = static_cast<int>(cost.naxes());
  if (static_cast<int>(marginals.size()) != n || static_cast<int>(refs.size()) != n)
    throw InvalidInput("brute_dual_ascent_classical: need one marginal and one reference per axis");
  for (int i = 0; i < n; ++i)
    if (static_cast<int>(marginals[i].size()) != cost.dims[i] ||
        static_cast<int>(refs[i].size()) != cost.dims[i])
      throw InvalidInput("brute_dual_ascent_classical: axis " + std::to_string(i) +
                         " weight length does not match the cost");

  const FlatInstance in{&cost, eps, &marginals, &refs};
  Potentials phi(n);
  for (int i = 0; i < n; ++i) phi[i].assign(cost.dims[i], 0.0);

  FlatEval cur = flat_evaluate(in, phi);
  double trial = cfg.step;
  for (int it = 0; it < cfg.max_iter; ++it) {
    if (it % 1000 == 0)
      log::debug("brute_dual_ascent_classical: it ", it, " grad_sup ", cur.grad_sup,
                 " value ", cur.value, " trial ", trial);
    if (cur.grad_sup < cfg.tol) return {ClassicalPotentials{std::move(phi)}, cur.value};

    double t = trial;
    Potentials cand(n);
    FlatEval next;
    while (true) {
      for (int i = 0; i < n; ++i) {
        cand[i] = phi[i];
        for (int m = 0; m < cost.dims[i]; ++m) cand[i][m] += t * cur.grad[i][m];
      }
      next = flat_evaluate(in, cand);
      if (accept_step(next.value, next.grad_sq, cur.value, cur.grad_sq, t)) break;
      t *= 0.5;
      if (t < cfg.step * kBacktrackFloor) {
        if (next.value < cur.value - 1e-15 * (1.0 + std::abs(cur.value)))
          throw OracleFailure(
              "brute_dual_ascent_classical: value decreases at the backtracking floor");
        break;
      }
    }
    phi.swap(cand);
    cur = std::move(next);
    trial = 4.0 * t;
  }
  throw OracleFailure("brute_dual_ascent_classical: gradient norm " +
                      short_num(cur.grad_sup) + " after " +
                      std::to_string(cfg.max_iter) + " iterations (tol " +
                      short_num(cfg.tol) + ")");
}

namespace {

struct QuantumEval {
  double value = 0.0;
  std::vector<HermitianOperator> grad;
  double grad_sq = 0.0;
  double grad_sup = 0.0;
};

// Value and gradient in one place; an overflowing exponent shows up as a
// -inf value (and an unacceptable gradient), so the line search simply
// rejects the step.
QuantumEval quantum_evaluate(const QuantumPotentials& u, const QuantumProblem& prob) {
  QuantumEval e;
  try {
    e.value = nc_dual_value(u, prob);
  } catch (const NumericalOverflow&) {
    e.value = kNegInf;
    e.grad_sq = std::numeric_limits<double>::infinity();
    e.grad_sup = e.grad_sq;
    return e;
  }
  e.grad = nc_dual_gradient(u, prob);
  for (const HermitianOperator& g : e.grad) {
    e.grad_sq += herm_inner(g, g);
    e.grad_sup = std::max(e.grad_sup, trace_norm(g));
  }
  return e;
}

}  // namespace

std::pair<QuantumPotentials, double> brute_dual_ascent_quantum(const QuantumProblem& prob,
                                                               const OracleConfig& cfg) {
  check_cfg(cfg);
  if (prob.space.total_dim > 36)
    throw InvalidInput("brute_dual_ascent_quantum: total dimension " +
                       std::to_string(prob.space.total_dim) + " exceeds the oracle limit 36");

  const int n = prob.factors();
  QuantumPotentials u;
  for (int i = 0; i < n; ++i)
    u.u.push_back(HermitianOperator::zero(prob.space.dims[i]));

  QuantumEval cur = quantum_evaluate(u, prob);
  double trial = cfg.step;
  for (int it = 0; it < cfg.max_iter; ++it) {
    if (cur.grad_sup < cfg.tol) return {std::move(u), cur.value};

    double t = trial;
    QuantumPotentials cand;
    QuantumEval next;
    while (true) {
      cand.u.clear();
      for (int i = 0; i < n; ++i) cand.u.push_back(u.u[i] + t * cur.grad[i]);
      next = quantum_evaluate(cand, prob);
      if (accept_step(next.value, next.grad_sq, cur.value, cur.grad_sq, t)) break;
      t *= 0.5;
      if (t < cfg.step * kBacktrackFloor) {
        if (next.value < cur.value - 1e-15 * (1.0 + std::abs(cur.value)))
          throw OracleFailure(
              "brute_dual_ascent_quantum: value decreases at the backtracking floor");
        break;
      }
    }
    u = std::move(cand);
    cur = std::move(next);
    trial = 4.0 * t;
  }
  throw OracleFailure("brute_dual_ascent_quantum: gradient norm did not reach tol " +
                      short_num(cfg.tol) + " within " + std::to_string(cfg.max_iter) +
                      " iterations");
}

std::vector<HermitianOperator> fd_gradient(
    const std::function<double(const std::vector<HermitianOperator>&)>& f,
    const std::vector<HermitianOperator>& u, double fd_step) {
  if (!(fd_step > 0.0)) throw InvalidInput("fd_gradient: fd_step must be positive");

  const auto probe = [&](const std::vector<HermitianOperator>& v) {
    const double val = f(v);
    if (!std::isfinite(val))
      throw OracleFailure("fd_gradient: functional returned a non-finite value");
    return val;
  };

  // Central difference of f along direction dir placed in slot j.
  const auto along = [&](std::size_t j, const CMatrix& dir) {
    CMatrix scaled = dir;
    scaled *= cplx(fd_step, 0.0);
    const HermitianOperator delta = HermitianOperator::hermitized(std::move(scaled));
    std::vector<HermitianOperator> shifted = u;
    shifted[j] += delta;
    const double up = probe(shifted);
    shifted[j] = u[j] - delta;
    const double down = probe(shifted);
    return (up - down) / (2.0 * fd_step);
  };

  std::vector<HermitianOperator> out;
  out.reserve(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) {
    const int d = u[j].dim();
    CMatrix g(d, d);
    for (int r = 0; r < d; ++r) {
      CMatrix diag(d, d);
      diag(r, r) = 1.0;
      g(r, r) = along(j, diag);
      for (int c = r + 1; c < d; ++c) {
        CMatrix sym(d, d);
        sym(r, c) = 1.0;
        sym(c, r) = 1.0;
        CMatrix asym(d, d);
        asym(r, c) = cplx(0.0, 1.0);
        asym(c, r) = cplx(0.0, -1.0);
        // <g, e_rc + e_cr> = 2 Re g_rc and <g, i e_rc - i e_cr> = 2 Im g_rc.
        g(r, c) = 0.5 * cplx(along(j, sym), along(j, asym));
        g(c, r) = std::conj(g(r, c));
      }
    }
    out.push_back(HermitianOperator::hermitized(std::move(g)));
  }
  return out;
}

QuantumProblem diagonal_bridge(const ClassicalProblem& prob) {
  std::vector<DensityMatrix> gammas;
  std::vector<HermitianOperator> refs;
  for (const DiscreteMeasure& m : prob.marginals) {
    gammas.emplace_back(HermitianOperator::diagonal(m.weights));
    refs.push_back(HermitianOperator::diagonal(m.ref_weights));
  }
  return QuantumProblem(HermitianOperator::diagonal(prob.cost.v), prob.eps,
                        std::move(gammas), std::move(refs));
}

}  // namespace eot
