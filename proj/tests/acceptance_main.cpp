// Release gate: one line per criterion, [PASS] or [FAIL], nonzero exit if
// anything fails.  Each criterion states the tolerance it enforces; random
// instances are seeded, so a failure reproduces exactly.
//
// Usage: acceptance <golden dir>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "eot/classical.hpp"
#include "eot/cli.hpp"
#include "eot/eigh.hpp"
#include "eot/errors.hpp"
#include "eot/matfun.hpp"
#include "eot/oracle.hpp"
#include "eot/problem_io.hpp"
#include "eot/quantum.hpp"
#include "eot/sym_subspace.hpp"
#include "eot/symmetric.hpp"
#include "eot/tensor_ops.hpp"
#include "testutil.hpp"

namespace fs = std::filesystem;
using namespace eot;

namespace {

fs::path g_golden_dir;

// Reports retained from the random classical/quantum runs so the sweep
// monotonicity criterion can audit every recorded sweep.
std::vector<SolveReport> g_classical_reports;
std::vector<SolveReport> g_quantum_reports;

struct Outcome {
  bool ok = true;
  std::vector<std::string> notes;
};

void check(Outcome& o, bool cond, const std::string& msg) {
  if (!cond) {
    o.ok = false;
    o.notes.push_back(msg);
  }
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

double now_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

double sup_diff(const CMatrix& a, const CMatrix& b) {
  CMatrix d = a;
  d -= b;
  return d.max_abs();
}

double max_residual(const SolveReport& r) {
  double m = 0.0;
  for (double x : r.marginal_residuals) m = std::max(m, x);
  return m;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ClassicalProblem random_classical(std::mt19937_64& rng, int instance) {
  const int axes = testutil::unif_int(rng, 2, 3);
  std::vector<int> dims;
  for (int i = 0; i < axes; ++i) dims.push_back(testutil::unif_int(rng, 2, 6));
  NdArray cost(dims);
  for (double& x : cost.v) x = testutil::unif(rng, 0.0, 1.0);
  std::vector<DiscreteMeasure> ms;
  for (int i = 0; i < axes; ++i) {
    std::vector<double> ref(dims[i], 1.0);
    if (instance % 3 == 0)
      for (double& x : ref) x = testutil::unif(rng, 0.5, 1.5);
    ms.emplace_back(testutil::random_simplex(rng, dims[i]), std::move(ref));
  }
  const double eps = instance % 2 == 0 ? 0.1 : 1.0;
  return ClassicalProblem(std::move(cost), eps, std::move(ms));
}

// 1. Random classical instances: tight residuals, closed duality gap, and
// entrywise agreement with the independent brute-force dual ascent.
void run_classical_random(Outcome& o) {
  auto rng = testutil::make_rng(101);
  const double t0 = now_seconds();
  for (int k = 0; k < 50; ++k) {
    const ClassicalProblem prob = random_classical(rng, k);
    const ClassicalSolution sol = sinkhorn_classical(prob);
    const std::string tag = "instance " + std::to_string(k);
    check(o, sol.report.converged, tag + ": did not converge");
    check(o, max_residual(sol.report) < 1e-10,
          tag + ": residual " + fmt(max_residual(sol.report)));
    check(o, std::abs(sol.report.gap) < 1e-8, tag + ": gap " + fmt(sol.report.gap));

    std::vector<std::vector<double>> weights, refs;
    for (const DiscreteMeasure& m : prob.marginals) {
      weights.push_back(m.weights);
      refs.push_back(m.ref_weights);
    }
    const auto [ophi, oval] =
        brute_dual_ascent_classical(prob.cost, prob.eps, weights, refs);
    const NdArray oplan = plan_from_potentials(ophi, prob);
    double diff = 0.0;
    for (std::size_t x = 0; x < oplan.v.size(); ++x)
      diff = std::max(diff, std::abs(oplan.v[x] - sol.plan.values.v[x]));
    check(o, diff < 1e-7, tag + ": oracle plan differs by " + fmt(diff));

    g_classical_reports.push_back(sol.report);
  }
  const double elapsed = now_seconds() - t0;
  check(o, elapsed < 10.0, "took " + fmt(elapsed) + " s (budget 10 s)");
  o.notes.push_back("50 instances in " + fmt(elapsed) + " s");
}

// 2. The 2x2 flip-cost instance has a closed-form plan; the solver and the
// brute-force oracle must both land on it.
void run_closed_form(Outcome& o) {
  NdArray cost({2, 2});
  cost.v = {0.0, 1.0, 1.0, 0.0};
  std::vector<DiscreteMeasure> ms;
  ms.emplace_back(std::vector<double>{0.5, 0.5}, std::vector<double>{1.0, 1.0});
  ms.emplace_back(std::vector<double>{0.5, 0.5}, std::vector<double>{1.0, 1.0});
  const ClassicalProblem prob(std::move(cost), 1.0, std::move(ms));

  const double diag = 1.0 / (2.0 * (1.0 + std::exp(-1.0)));
  const double off = std::exp(-1.0) / (2.0 * (1.0 + std::exp(-1.0)));

  const ClassicalSolution sol = sinkhorn_classical(prob);
  check(o, sol.report.converged, "did not converge");
  const std::vector<double> expect = {diag, off, off, diag};
  for (int x = 0; x < 4; ++x)
    check(o, std::abs(sol.plan.values.v[x] - expect[x]) < 1e-10,
          "plan[" + std::to_string(x) + "] off by " +
              fmt(sol.plan.values.v[x] - expect[x]));

  OracleConfig cfg;
  cfg.tol = 1e-10;
  const auto [ophi, oval] = brute_dual_ascent_classical(
      prob.cost, prob.eps, {{0.5, 0.5}, {0.5, 0.5}}, {{1.0, 1.0}, {1.0, 1.0}}, cfg);
  const NdArray oplan = plan_from_potentials(ophi, prob);
  for (int x = 0; x < 4; ++x)
    check(o, std::abs(oplan.v[x] - expect[x]) < 1e-9,
          "oracle plan[" + std::to_string(x) + "] off by " + fmt(oplan.v[x] - expect[x]));
}

QuantumProblem random_quantum(std::mt19937_64& rng, const std::vector<int>& dims,
                              double eps) {
  int total = 1;
  for (int d : dims) total *= d;
  HermitianOperator h = HermitianOperator::hermitized(testutil::random_hermitian(rng, total));
  const double target = testutil::unif(rng, 0.5, 2.0);
  h *= target / std::max(op_norm(h), 1e-12);
  std::vector<DensityMatrix> gammas;
  for (int d : dims)
    gammas.emplace_back(HermitianOperator::hermitized(testutil::random_density(rng, d)));
  return QuantumProblem(std::move(h), eps, std::move(gammas));
}

// 3. Random density-matrix instances across the supported factor layouts:
// residuals at tolerance, closed gap, and the state reproduced by
// exp((sum of embedded potentials - H)/eps).
void run_quantum_random(Outcome& o) {
  auto rng = testutil::make_rng(103);
  const std::vector<std::vector<int>> layouts = {{2, 2}, {2, 3}, {3, 3}, {2, 2, 2}};
  const double t0 = now_seconds();
  for (int k = 0; k < 30; ++k) {
    const double eps = k % 2 == 0 ? 0.25 : 1.0;
    const QuantumProblem prob = random_quantum(rng, layouts[k % 4], eps);
    const QuantumSolution sol = sinkhorn_quantum(prob);
    const std::string tag = "instance " + std::to_string(k);
    check(o, sol.report.converged, tag + ": did not converge");
    check(o, max_residual(sol.report) < 1e-8,
          tag + ": residual " + fmt(max_residual(sol.report)));
    check(o, std::abs(sol.report.gap) < 1e-7, tag + ": gap " + fmt(sol.report.gap));
    const double rec =
        sup_diff(sol.plan.mat(), gamma_from_potentials(sol.potentials, prob).mat());
    check(o, rec < 1e-8, tag + ": reconstruction " + fmt(rec));
    g_quantum_reports.push_back(sol.report);
  }
  const double elapsed = now_seconds() - t0;
  check(o, elapsed < 60.0, "took " + fmt(elapsed) + " s (budget 60 s)");
  o.notes.push_back("30 instances in " + fmt(elapsed) + " s");
}

// 4. Simultaneously diagonal data: the density-matrix solver and the
// discrete solver are the same problem in two encodings.
void run_diagonal_bridge(Outcome& o) {
  auto rng = testutil::make_rng(104);
  for (int k = 0; k < 20; ++k) {
    const int axes = k % 5 == 4 ? 3 : 2;
    std::vector<int> dims;
    for (int i = 0; i < axes; ++i)
      dims.push_back(testutil::unif_int(rng, 2, axes == 2 ? 4 : 2));
    NdArray cost(dims);
    for (double& x : cost.v) x = testutil::unif(rng, 0.0, 1.0);
    std::vector<DiscreteMeasure> ms;
    for (int i = 0; i < axes; ++i) {
      std::vector<double> ref(dims[i]);
      for (double& x : ref) x = testutil::unif(rng, 0.5, 1.5);
      ms.emplace_back(testutil::random_simplex(rng, dims[i], 0.1), std::move(ref));
    }
    const double eps = k % 2 == 0 ? 0.5 : 1.0;
    const ClassicalProblem cp(std::move(cost), eps, std::move(ms));
    const ClassicalSolution cs = sinkhorn_classical(cp, 1e-11);
    const QuantumProblem qp = diagonal_bridge(cp);
    const QuantumSolution qs = sinkhorn_quantum(qp, 1e-9);

    const std::string tag = "instance " + std::to_string(k);
    check(o, cs.report.converged && qs.report.converged, tag + ": not converged");
    check(o, std::abs(cs.report.primal - qs.report.primal) < 1e-8,
          tag + ": primal differs by " + fmt(cs.report.primal - qs.report.primal));
    check(o, std::abs(cs.report.dual - qs.report.dual) < 1e-8,
          tag + ": dual differs by " + fmt(cs.report.dual - qs.report.dual));
    double diff = 0.0;
    for (int x = 0; x < cs.plan.values.size(); ++x)
      diff = std::max(diff, std::abs(qs.plan.mat()(x, x).real() - cs.plan.values.v[x]));
    check(o, diff < 1e-8, tag + ": plan diagonal differs by " + fmt(diff));
  }
}

// 5. With H = 0 the optimal state is exactly the tensor product of the
// marginals.
void run_product_law(Outcome& o) {
  auto rng = testutil::make_rng(105);
  const std::vector<std::vector<int>> layouts = {{2, 2}, {2, 3}, {3, 3}, {2, 2, 2}, {4, 2}};
  for (std::size_t k = 0; k < layouts.size(); ++k) {
    int total = 1;
    for (int d : layouts[k]) total *= d;
    std::vector<DensityMatrix> gammas;
    for (int d : layouts[k])
      gammas.emplace_back(HermitianOperator::hermitized(testutil::random_density(rng, d)));
    HermitianOperator product = gammas[0].op();
    for (std::size_t i = 1; i < gammas.size(); ++i) product = kron(product, gammas[i].op());
    const QuantumProblem prob(HermitianOperator::zero(total), 1.0, std::move(gammas));
    const QuantumSolution sol = sinkhorn_quantum(prob);
    const double dist = trace_norm(sol.plan.op() - product);
    check(o, sol.report.converged, "layout " + std::to_string(k) + ": not converged");
    check(o, dist < 1e-9,
          "layout " + std::to_string(k) + ": distance to product " + fmt(dist));
  }
}

// 6. The analytic gradient of the dual matches central finite differences.
void run_gradient_audit(Outcome& o) {
  auto rng = testutil::make_rng(106);
  for (int k = 0; k < 10; ++k) {
    const QuantumProblem prob = random_quantum(rng, {2, 2}, k % 2 == 0 ? 0.5 : 1.0);
    QuantumPotentials u;
    u.u.push_back(HermitianOperator::hermitized(testutil::random_hermitian(rng, 2, 0.5)));
    u.u.push_back(HermitianOperator::hermitized(testutil::random_hermitian(rng, 2, 0.5)));
    const std::vector<HermitianOperator> grad = nc_dual_gradient(u, prob);
    const auto value = [&](const std::vector<HermitianOperator>& us) {
      return nc_dual_value(QuantumPotentials{us}, prob);
    };
    const std::vector<HermitianOperator> fd = fd_gradient(value, u.u);
    double diff = 0.0;
    for (std::size_t j = 0; j < grad.size(); ++j)
      diff = std::max(diff, sup_diff(grad[j].mat(), fd[j].mat()));
    check(o, diff < 1e-6, "instance " + std::to_string(k) + ": fd mismatch " + fmt(diff));
  }
}

// 7. Every recorded sweep of every solve from criteria 1 and 3 must not
// decrease the dual value.
void run_monotonicity(Outcome& o) {
  int sweeps = 0;
  const auto audit = [&](const std::vector<SolveReport>& reports, const char* family) {
    for (std::size_t r = 0; r < reports.size(); ++r) {
      const std::vector<SweepRecord>& t = reports[r].trace;
      for (std::size_t i = 1; i < t.size(); ++i) {
        ++sweeps;
        check(o, t[i].dual >= t[i - 1].dual - 1e-10,
              std::string(family) + " solve " + std::to_string(r) + " sweep " +
                  std::to_string(t[i].sweep) + ": dual dropped by " +
                  fmt(t[i - 1].dual - t[i].dual));
      }
    }
  };
  check(o, !g_classical_reports.empty() && !g_quantum_reports.empty(),
        "no retained reports (criteria 1 and 3 must run first)");
  audit(g_classical_reports, "classical");
  audit(g_quantum_reports, "quantum");
  o.notes.push_back(std::to_string(sweeps) + " sweep transitions audited");
}

// 8. Potential recentring: zero-sum shifts by identity, Kronecker sum and
// dual value untouched, idempotent.  The empirical uniform bound on the
// recentred sweep is reported as a warning only.
void run_renormalisation(Outcome& o) {
  auto rng = testutil::make_rng(108);
  for (int k = 0; k < 10; ++k) {
    const std::vector<int> dims = k % 2 == 0 ? std::vector<int>{2, 2} : std::vector<int>{2, 3};
    const QuantumProblem prob = random_quantum(rng, dims, 0.7);
    QuantumPotentials u;
    for (int d : dims)
      u.u.push_back(HermitianOperator::hermitized(testutil::random_hermitian(rng, d, 0.8)));

    const QuantumPotentials ur = renormalize(u, prob);
    const std::string tag = "instance " + std::to_string(k);

    double alpha_sum = 0.0;
    for (std::size_t i = 0; i < u.u.size(); ++i) {
      const HermitianOperator shift = ur.u[i] - u.u[i];
      const double alpha = shift.mat().trace().real() / dims[i];
      alpha_sum += alpha;
      HermitianOperator id = HermitianOperator::identity(dims[i]);
      id *= alpha;
      check(o, sup_diff(shift.mat(), id.mat()) < 1e-14,
            tag + ": shift " + std::to_string(i) + " is not a multiple of identity");
    }
    check(o, std::abs(alpha_sum) < 1e-14, tag + ": shifts sum to " + fmt(alpha_sum));

    const double ksum_diff = sup_diff(kron_sum(ur.u).mat(), kron_sum(u.u).mat());
    check(o, ksum_diff < 1e-14, tag + ": Kronecker sum moved by " + fmt(ksum_diff));

    const QuantumPotentials urr = renormalize(ur, prob);
    double idem = 0.0;
    for (std::size_t i = 0; i < u.u.size(); ++i)
      idem = std::max(idem, sup_diff(urr.u[i].mat(), ur.u[i].mat()));
    check(o, idem < 1e-12, tag + ": recentring is not idempotent, moved " + fmt(idem));

    // Warning-level empirical bound on the recentred sweep output.
    const QuantumPotentials swept = renormalize(sinkhorn_sweep(ur, prob), prob);
    const double bound = 2.0 * op_norm(prob.h_eff) + 1e-6;
    for (std::size_t i = 0; i < swept.u.size(); ++i) {
      HermitianOperator ref = prob.log_marginals[i];
      ref *= prob.eps;
      const double norm = op_norm(swept.u[i] - ref);
      if (norm > bound)
        o.notes.push_back("warning: " + tag + " recentred sweep slot " +
                          std::to_string(i) + " norm " + fmt(norm) + " > bound " +
                          fmt(bound));
    }
  }
}

// 9. Admissibility window classification, plus the explicit dual direction
// that certifies an inadmissible fermionic marginal by driving the dual
// above any bound.
void run_pauli_suite(Outcome& o) {
  {
    std::vector<cplx> third = {cplx(1.0 / 3, 0), 0, 0, 0, cplx(1.0 / 3, 0), 0, 0, 0,
                               cplx(1.0 / 3, 0)};
    CMatrix m(3, 3);
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) m(r, c) = third[r * 3 + c];
    const DensityMatrix uniform3{HermitianOperator(std::move(m))};
    check(o, pauli_check(uniform3, 2).classification == PauliClass::strict,
          "identity/3 with N=2 should be strict");

    CMatrix pure(2, 2);
    pure(0, 0) = 1.0;
    check(o,
          pauli_check(DensityMatrix{HermitianOperator(std::move(pure))}, 2)
                  .classification == PauliClass::violates,
          "a pure state with N=2 should violate");

    CMatrix half(2, 2);
    half(0, 0) = half(1, 1) = 0.5;
    check(o,
          pauli_check(DensityMatrix{HermitianOperator(std::move(half))}, 2)
                  .classification == PauliClass::boundary,
          "identity/2 with N=2 should be boundary");
  }

  auto rng = testutil::make_rng(109);
  const double eps = 0.5;
  for (int k = 0; k < 10; ++k) {
    const int d = 2 + k % 3;
    // mix a pure state in: the top eigenvalue is then at least 0.6 > 1/2
    CMatrix rho = testutil::random_density(rng, d);
    CMatrix psi = testutil::random_matrix(rng, d, 1);
    double nrm = 0.0;
    for (int r = 0; r < d; ++r) nrm += std::norm(psi(r, 0));
    CMatrix gm(d, d);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c)
        gm(r, c) = 0.4 * rho(r, c) + 0.6 * psi(r, 0) * std::conj(psi(c, 0)) / nrm;
    const DensityMatrix gamma{HermitianOperator::hermitized(std::move(gm))};
    const std::string tag = "instance " + std::to_string(k) + " (d=" + std::to_string(d) + ")";
    check(o, pauli_check(gamma, 2).classification == PauliClass::violates,
          tag + ": construction should violate the window");

    const HermitianOperator h =
        symmetrize(HermitianOperator::hermitized(testutil::random_hermitian(rng, d * d)), d, 2);
    const SymmetricProblem prob(d, 2, Statistics::fermions, h, eps, gamma);
    const double h_norm = op_norm(h);

    double prev = -1e300;
    for (int n : {1, 10, 100, 1000}) {
      const PauliWitness w = pauli_witness(gamma, 2, n, h_norm, eps);
      const double v = sym_dual_value(w.u, prob);
      check(o, v > w.lower_bound,
            tag + " n=" + std::to_string(n) + ": dual " + fmt(v) + " not above bound " +
                fmt(w.lower_bound));
      check(o, v > prev,
            tag + " n=" + std::to_string(n) + ": dual not strictly increasing");
      prev = v;
    }
  }
}

// 10. Symmetry-constrained solves close the gap and return states that live
// exactly on the (anti)symmetric subspace.
void run_symmetric_duality(Outcome& o) {
  auto rng = testutil::make_rng(110);
  struct Case {
    int d;
    Statistics stat;
    double eps;
  };
  const std::vector<Case> cases = {{3, Statistics::fermions, 0.5},
                                   {3, Statistics::fermions, 0.8},
                                   {3, Statistics::fermions, 1.0},
                                   {2, Statistics::bosons, 0.5},
                                   {2, Statistics::bosons, 0.8},
                                   {2, Statistics::bosons, 1.0}};
  for (std::size_t k = 0; k < cases.size(); ++k) {
    const auto [d, stat, eps] = cases[k];
    const std::string tag = "instance " + std::to_string(k);

    CMatrix gm(d, d);
    if (stat == Statistics::fermions) {
      // 0.2 rho + 0.8 I/3 keeps the top eigenvalue below 0.2 + 0.8/3 < 1/2
      const CMatrix rho = testutil::random_density(rng, d);
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) {
          gm(r, c) = 0.2 * rho(r, c);
          if (r == c) gm(r, c) += 0.8 / d;
        }
    } else {
      gm = testutil::random_density(rng, d);
    }
    const DensityMatrix gamma{HermitianOperator::hermitized(std::move(gm))};
    const HermitianOperator h =
        symmetrize(HermitianOperator::hermitized(testutil::random_hermitian(rng, d * d)), d, 2);
    const SymmetricProblem prob(d, 2, stat, h, eps, gamma);
    const SymmetricSolution sol = solve_symmetric(prob);

    check(o, sol.report.converged, tag + ": did not converge");
    check(o, max_residual(sol.report) < 1e-8,
          tag + ": residual " + fmt(max_residual(sol.report)));
    check(o, std::abs(sol.report.gap) < 1e-7, tag + ": gap " + fmt(sol.report.gap));

    // projector onto the subspace leaves the embedded state untouched
    const DensityMatrix full = embed_symmetric_state(sol.plan_sub, prob.iso);
    const CMatrix proj = matmul(prob.iso.q, prob.iso.q.adjoint());
    const CMatrix projected = matmul(matmul(proj, full.mat()), proj);
    const double off = sup_diff(projected, full.mat());
    check(o, off < 1e-12, tag + ": state leaks off the subspace by " + fmt(off));
  }
}

// 11. Feeding back the marginals of the Gibbs state recovers the
// unconstrained minimum -eps log Tr e^{-H/eps}, with a strictly positive
// optimiser.
void run_gibbs_check(Outcome& o) {
  auto rng = testutil::make_rng(111);
  const std::vector<double> epss = {0.25, 0.5, 1.0};
  for (std::size_t k = 0; k < epss.size(); ++k) {
    const double eps = epss[k];
    HermitianOperator h = HermitianOperator::hermitized(testutil::random_hermitian(rng, 4));
    h *= 1.5 / std::max(op_norm(h), 1e-12);
    HermitianOperator ex = h;
    ex *= -1.0 / eps;
    const double log_z = log_trace_exp(ex);
    HermitianOperator gibbs = mat_exp(ex);
    gibbs *= std::exp(-log_z);
    const DensityMatrix gstate(std::move(gibbs));

    const ProductSpace space({2, 2});
    std::vector<DensityMatrix> gammas;
    for (int i = 0; i < 2; ++i)
      gammas.emplace_back(HermitianOperator::hermitized(
          partial_trace(gstate.op(), space, i).mat()));
    const QuantumProblem prob(h, eps, std::move(gammas));
    const QuantumSolution sol = sinkhorn_quantum(prob, 1e-9);

    const std::string tag = "instance " + std::to_string(k);
    const double expected = -eps * log_z;
    check(o, sol.report.converged, tag + ": did not converge");
    check(o, std::abs(sol.report.primal - expected) < 1e-8,
          tag + ": primal off the free energy by " +
              fmt(sol.report.primal - expected));
    const double min_eig = eigh_values(sol.plan.mat()).front();
    check(o, min_eig > 0.0, tag + ": optimiser has min eigenvalue " + fmt(min_eig));
  }
}

// 12. Command layer: canonical files round trip byte-for-byte and the exit
// codes follow the contract.
void run_cli_contract(Outcome& o) {
  const char* goldens[] = {"classical_2x2.json", "classical_weighted.json",
                           "quantum_2x2.json",   "fermion_d3.json",
                           "boson_d2.json",      "fermion_violates.json",
                           "fermion_boundary.json"};
  for (const char* name : goldens) {
    const std::string text = slurp(g_golden_dir / name);
    check(o, !text.empty(), std::string(name) + ": missing golden file");
    if (text.empty()) continue;
    try {
      const std::string round = serialize_problem(parse_problem(text));
      check(o, round == text, std::string(name) + ": round trip not byte-stable");
    } catch (const Error& e) {
      check(o, false, std::string(name) + ": " + e.what());
    }
  }

  const fs::path dir = fs::temp_directory_path() / "eot_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  for (const char* name :
       {"classical_2x2.json", "quantum_2x2.json", "fermion_violates.json",
        "malformed_dims.json"})
    fs::copy_file(g_golden_dir / name, dir / name, fs::copy_options::overwrite_existing);

  const auto solve = [&](const std::string& name, const SolveFlags& flags,
                         std::string* err_text = nullptr) {
    std::ostringstream out, err;
    const int code = cmd_solve((dir / name).string(), flags, out, err);
    if (err_text) *err_text = err.str();
    return code;
  };

  check(o, solve("classical_2x2.json", {}) == 0, "converged solve should exit 0");

  SolveFlags capped;
  capped.max_iter = 1;
  check(o, solve("quantum_2x2.json", capped) == 2,
        "iteration-capped solve should exit 2");

  std::string err_text;
  check(o, solve("fermion_violates.json", {}, &err_text) == 3,
        "inadmissible fermionic marginal should exit 3");
  check(o, err_text.find("violates") != std::string::npos,
        "exit 3 should carry the classification on stderr");

  check(o, solve("malformed_dims.json", {}) == 1, "malformed input should exit 1");

  // a written report replays through verify
  std::ostringstream out, err;
  check(o, cmd_verify((dir / "classical_2x2.report.json").string(), out, err) == 0,
        "fresh report should verify");
}

struct Criterion {
  const char* name;
  void (*fn)(Outcome&);
};

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::fprintf(stderr, "usage: acceptance <golden dir>\n");
    return 2;
  }
  g_golden_dir = argv[1];

  const Criterion criteria[] = {
      {"classical solver: residual<1e-10, gap<1e-8, oracle match 1e-7, 50 instances",
       run_classical_random},
      {"two-marginal flip-cost instance hits the closed form within 1e-10",
       run_closed_form},
      {"quantum solver: residual<1e-8, gap<1e-7, reconstruction<1e-8, 30 instances",
       run_quantum_random},
      {"diagonal problems: quantum and classical solvers agree to 1e-8, 20 instances",
       run_diagonal_bridge},
      {"H=0 optimiser is the tensor product of the marginals within 1e-9",
       run_product_law},
      {"dual gradient matches central finite differences within 1e-6",
       run_gradient_audit},
      {"dual value is nondecreasing across all recorded sweeps (1e-10 slack)",
       run_monotonicity},
      {"potential recentring: zero-sum, Kronecker-sum-preserving, idempotent",
       run_renormalisation},
      {"admissibility window classification and divergence witness",
       run_pauli_suite},
      {"symmetric solves: gap<1e-7, residual<1e-8, state on the subspace",
       run_symmetric_duality},
      {"Gibbs marginals reproduce the free energy within 1e-8",
       run_gibbs_check},
      {"command layer: byte-stable round trips and the exit-code contract",
       run_cli_contract},
  };

  bool all_ok = true;
  int id = 0;
  for (const Criterion& c : criteria) {
    ++id;
    Outcome o;
    const double t0 = now_seconds();
    try {
      c.fn(o);
    } catch (const std::exception& e) {
      o.ok = false;
      o.notes.push_back(std::string("unexpected exception: ") + e.what());
    }
    const double elapsed = now_seconds() - t0;
    std::printf("[%s] %2d. %s (%.2f s)\n", o.ok ? "PASS" : "FAIL", id, c.name, elapsed);
    for (const std::string& note : o.notes) std::printf("       - %s\n", note.c_str());
    all_ok = all_ok && o.ok;
  }
  return all_ok ? 0 : 1;
}
