#include "eot/cli.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "eot/classical.hpp"
#include "eot/errors.hpp"
#include "eot/matfun.hpp"
#include "eot/problem_io.hpp"
#include "eot/quantum.hpp"
#include "eot/symmetric.hpp"
#include "eot/tensor_ops.hpp"
#include "eot/version.hpp"

namespace eot {
namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write '" + path + "'");
  out << text;
}

const char* pauli_class_name(PauliClass c) {
  switch (c) {
    case PauliClass::strict: return "strict";
    case PauliClass::boundary: return "boundary";
    default: return "violates";
  }
}

json status_json(const PauliStatus& s) {
  json j;
  j["classification"] = pauli_class_name(s.classification);
  j["max_eig"] = s.max_eig;
  j["min_eig"] = s.min_eig;
  return j;
}

// The settings a solve actually runs with: command-line flags win, then the
// file's solver block, then the kind defaults.
struct EffectiveConfig {
  double tol = 0.0;
  int max_iter = 0;
  double inner_tol = 0.0;
  std::optional<long> seed;
};

EffectiveConfig effective_config(const ProblemFile& p, const SolveFlags& flags) {
  EffectiveConfig cfg;
  const double default_tol = p.kind == ProblemKind::classical ? 1e-10 : 1e-8;
  cfg.tol = flags.tol ? *flags.tol : p.solver.tol.value_or(default_tol);
  cfg.max_iter = flags.max_iter ? *flags.max_iter : p.solver.max_iter.value_or(10000);
  cfg.inner_tol = p.solver.inner_tol.value_or(1e-10);
  cfg.seed = p.solver.seed;
  if (!(cfg.tol > 0.0)) throw InvalidInput("tol must be positive");
  if (cfg.max_iter < 1) throw InvalidInput("max_iter must be >= 1");
  if (!(cfg.inner_tol > 0.0)) throw InvalidInput("inner_tol must be positive");
  return cfg;
}

json config_json(const EffectiveConfig& cfg) {
  json j;
  j["inner_tol"] = cfg.inner_tol;
  j["max_iter"] = cfg.max_iter;
  j["tol"] = cfg.tol;
  if (cfg.seed) j["seed"] = *cfg.seed;
  return j;
}

json complex_matrix_json(const CMatrix& m) {
  json out = json::array();
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c)
      out.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
  return out;
}

json report_json(const SolveReport& r) {
  json j;
  j["converged"] = r.converged;
  j["dual"] = r.dual;
  j["gap"] = r.gap;
  j["iterations"] = r.iterations;
  j["marginal_residuals"] = r.marginal_residuals;
  j["primal"] = r.primal;
  json trace = json::array();
  for (const SweepRecord& rec : r.trace) {
    json row;
    row["dual_value"] = rec.dual;
    row["residuals"] = rec.residuals;
    row["sweep"] = rec.sweep;
    trace.push_back(std::move(row));
  }
  j["trace"] = std::move(trace);
  return j;
}

void write_trace_csv(const std::string& path, const SolveReport& r, int marginals) {
  std::ostringstream csv;
  csv << std::setprecision(17);
  csv << "sweep,dual_value";
  for (int i = 1; i <= marginals; ++i) csv << ",residual_" << i;
  csv << "\n";
  for (const SweepRecord& rec : r.trace) {
    csv << rec.sweep << "," << rec.dual;
    for (double x : rec.residuals) csv << "," << x;
    csv << "\n";
  }
  write_file(path, csv.str());
}

CMatrix matrix_from_json(const json& j, int dim, const std::string& field) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim * dim)
    throw InvalidInput("report file: field '" + field + "' must hold " +
                       std::to_string(dim) + "^2 [re, im] pairs");
  CMatrix m(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) {
      const json& e = j[static_cast<std::size_t>(r) * dim + c];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
        throw InvalidInput("report file: field '" + field + "' must hold [re, im] pairs");
      m(r, c) = cplx(e[0].get<double>(), e[1].get<double>());
    }
  return m;
}

// Entrywise sup distance; used for reconstruction residuals.
double sup_diff(const CMatrix& a, const CMatrix& b) {
  CMatrix d = a;
  d -= b;
  return d.max_abs();
}

// L1 distance between marginal `axis` of the plan and the target weights.
double classical_residual(const NdArray& plan, int axis,
                          const std::vector<double>& weights) {
  const std::vector<double> marg = axis_sum(plan, axis);
  double res = 0.0;
  for (std::size_t k = 0; k < weights.size(); ++k) res += std::abs(marg[k] - weights[k]);
  return res;
}

struct Recomputed {
  double primal = 0.0;
  double dual = 0.0;
  std::vector<double> residuals;
  double reconstruction = 0.0;
};

Recomputed recompute_classical(const ProblemFile& p, const json& state,
                               const json& potentials) {
  const ClassicalProblem prob = build_classical(p);
  ClassicalPotentials phi;
  if (!potentials.is_array() || potentials.size() != p.dims.size())
    throw InvalidInput("report file: field 'potentials' must hold one vector per axis");
  for (std::size_t i = 0; i < potentials.size(); ++i) {
    phi.phi.push_back(potentials[i].get<std::vector<double>>());
    if (static_cast<int>(phi.phi[i].size()) != p.dims[i])
      throw InvalidInput("report file: field 'potentials' length mismatch");
  }
  NdArray plan(p.dims);
  const std::vector<double> flat = state.at("plan").get<std::vector<double>>();
  if (flat.size() != plan.v.size())
    throw InvalidInput("report file: field 'state.plan' length mismatch");
  plan.v = flat;

  Recomputed out;
  out.primal = primal_value(Coupling(plan), prob);
  out.dual = dual_value(phi, prob);
  for (int ax = 0; ax < prob.axes(); ++ax)
    out.residuals.push_back(classical_residual(plan, ax, prob.marginals[ax].weights));
  const NdArray rebuilt = plan_from_potentials(phi, prob);
  double sup = 0.0;
  for (std::size_t k = 0; k < plan.v.size(); ++k)
    sup = std::max(sup, std::abs(plan.v[k] - rebuilt.v[k]));
  out.reconstruction = sup;
  return out;
}

Recomputed recompute_quantum(const ProblemFile& p, const json& state,
                             const json& potentials) {
  const QuantumProblem prob = build_quantum(p);
  if (!potentials.is_array() || static_cast<int>(potentials.size()) != prob.factors())
    throw InvalidInput("report file: field 'potentials' must hold one operator per factor");
  QuantumPotentials u;
  for (int i = 0; i < prob.factors(); ++i)
    u.u.emplace_back(matrix_from_json(potentials[static_cast<std::size_t>(i)], p.dims[i],
                                      "potentials[" + std::to_string(i) + "]"));
  const int total = prob.space.total_dim;
  const DensityMatrix gamma(
      HermitianOperator(matrix_from_json(state.at("plan"), total, "state.plan")));

  Recomputed out;
  out.primal = nc_primal_value(gamma, prob);
  out.dual = nc_dual_value(u, prob);
  for (int i = 0; i < prob.factors(); ++i)
    out.residuals.push_back(
        trace_norm(partial_trace(gamma.op(), prob.space, i) - prob.marginals[i].op()));
  out.reconstruction = sup_diff(gamma.mat(), gamma_from_potentials(u, prob).mat());
  return out;
}

Recomputed recompute_symmetric(const ProblemFile& p, const json& state,
                               const json& potentials) {
  const SymmetricProblem prob = build_symmetric(p);
  if (!potentials.is_array() || potentials.size() != 1)
    throw InvalidInput("report file: field 'potentials' must hold the one shared operator");
  const HermitianOperator u(matrix_from_json(potentials[0], prob.d, "potentials[0]"));
  const int sub = prob.iso.sub_dim;
  if (state.contains("subspace_dim") && state["subspace_dim"].get<int>() != sub)
    throw InvalidInput("report file: field 'state.subspace_dim' does not match the problem");
  const DensityMatrix gamma_sub(
      HermitianOperator(matrix_from_json(state.at("plan_sub"), sub, "state.plan_sub")));

  Recomputed out;
  out.primal = sym_primal_value(gamma_sub, prob);
  out.dual = sym_dual_value(u, prob);
  const DensityMatrix full = embed_symmetric_state(gamma_sub, prob.iso);
  out.residuals.push_back(
      trace_norm(partial_trace(full.op(), prob.space, 0) - prob.gamma.op()));

  // The stored state solves the compressed problem; rebuild it from the
  // potential as exp(Q^dagger((1/N)(+)U - H)Q / eps), trace-normalised.
  std::vector<HermitianOperator> slots;
  HermitianOperator u_scaled = u;
  u_scaled *= 1.0 / prob.particles;
  for (int i = 0; i < prob.particles; ++i) slots.push_back(u_scaled);
  HermitianOperator a = kron_sum(slots) - prob.h;
  HermitianOperator a_sub = HermitianOperator::hermitized(compress(prob.iso, a.mat()));
  a_sub *= 1.0 / prob.eps;
  HermitianOperator rebuilt = mat_exp(a_sub);
  rebuilt *= 1.0 / rebuilt.mat().trace().real();
  out.reconstruction = sup_diff(gamma_sub.mat(), rebuilt.mat());
  return out;
}

}  // namespace

std::string report_path_for(const std::string& input_path) {
  const std::string suffix = ".json";
  std::string base = input_path;
  if (base.size() > suffix.size() &&
      base.compare(base.size() - suffix.size(), suffix.size(), suffix) == 0)
    base.resize(base.size() - suffix.size());
  return base + ".report.json";
}

int cmd_solve(const std::string& path, const SolveFlags& flags, std::ostream& out,
              std::ostream& err) {
  try {
    const ProblemFile p = parse_problem(read_file(path));
    const EffectiveConfig cfg = effective_config(p, flags);

    json root;
    root["config"] = config_json(cfg);
    root["kind"] = kind_name(p.kind);
    root["library_version"] = kLibraryVersion;
    root["problem"] = json::parse(serialize_problem(p));
    root["schema_version"] = 1;

    const auto t0 = std::chrono::steady_clock::now();
    SolveReport rep;
    json state;
    json potentials;
    int marginals = 0;
    switch (p.kind) {
      case ProblemKind::classical: {
        const ClassicalProblem prob = build_classical(p);
        ClassicalSolution sol = sinkhorn_classical(prob, cfg.tol, cfg.max_iter);
        rep = std::move(sol.report);
        potentials = json(sol.potentials.phi);
        state["plan"] = sol.plan.values.v;
        marginals = prob.axes();
        break;
      }
      case ProblemKind::quantum: {
        const QuantumProblem prob = build_quantum(p);
        QuantumSolution sol = sinkhorn_quantum(prob, cfg.tol, cfg.max_iter, cfg.inner_tol);
        rep = std::move(sol.report);
        potentials = json::array();
        for (const HermitianOperator& ui : sol.potentials.u)
          potentials.push_back(complex_matrix_json(ui.mat()));
        state["plan"] = complex_matrix_json(sol.plan.mat());
        marginals = prob.factors();
        break;
      }
      default: {
        const SymmetricProblem prob = build_symmetric(p);
        SymmetricSolution sol = solve_symmetric(prob, cfg.tol, cfg.max_iter);
        rep = std::move(sol.report);
        potentials = json::array({complex_matrix_json(sol.potential.mat())});
        state["plan_sub"] = complex_matrix_json(sol.plan_sub.mat());
        state["subspace_dim"] = prob.iso.sub_dim;
        marginals = 1;
        break;
      }
    }
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    root["potentials"] = std::move(potentials);
    root["report"] = report_json(rep);
    if (!flags.no_state) root["state"] = std::move(state);
    root["wall_time_seconds"] = wall;

    const std::string report_path = report_path_for(path);
    write_file(report_path, root.dump(2) + "\n");
    if (!flags.trace_path.empty()) write_trace_csv(flags.trace_path, rep, marginals);

    json summary;
    summary["converged"] = rep.converged;
    summary["dual"] = rep.dual;
    summary["gap"] = rep.gap;
    summary["iterations"] = rep.iterations;
    summary["report"] = report_path;
    out << summary.dump() << "\n";
    return rep.converged ? 0 : 2;
  } catch (const PauliViolation& e) {
    err << status_json(e.status).dump() << "\n";
    return 3;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_check_pauli(const std::string& path, std::ostream& out, std::ostream& err) {
  try {
    const ProblemFile p = parse_problem(read_file(path), /*require_operator=*/false);
    if (p.kind != ProblemKind::bosonic && p.kind != ProblemKind::fermionic)
      throw InvalidInput("check-pauli expects a bosonic or fermionic problem file");
    CMatrix m(p.dims[0], p.dims[0]);
    for (int r = 0; r < p.dims[0]; ++r)
      for (int c = 0; c < p.dims[0]; ++c)
        m(r, c) = p.marginals_herm[0][static_cast<std::size_t>(r) * p.dims[0] + c];
    const DensityMatrix gamma{HermitianOperator(std::move(m))};
    const PauliStatus status = pauli_check(gamma, static_cast<int>(p.dims.size()));
    out << status_json(status).dump() << "\n";
    switch (status.classification) {
      case PauliClass::strict: return 0;
      case PauliClass::boundary: return 2;
      default: return 3;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_verify(const std::string& report_path, std::ostream& out, std::ostream& err) {
  json root;
  try {
    root = json::parse(read_file(report_path));
  } catch (const json::parse_error& e) {
    err << "error: report file: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (!root.is_object() || !root.contains("problem") || !root.contains("report") ||
        !root.contains("config")) {
      err << "error: report file: missing problem/config/report sections\n";
      return 1;
    }
    if (!root.contains("state") || !root.contains("potentials")) {
      err << "error: report file: no stored state or potentials (saved with --no-state?)\n";
      return 1;
    }
    const ProblemFile p = parse_problem(root["problem"].dump());
    const json& rep = root["report"];
    const double stored_primal = rep.at("primal").get<double>();
    const double stored_dual = rep.at("dual").get<double>();
    const double stored_gap = rep.at("gap").get<double>();
    const bool converged = rep.at("converged").get<bool>();
    const double tol = root["config"].at("tol").get<double>();

    Recomputed rc;
    switch (p.kind) {
      case ProblemKind::classical:
        rc = recompute_classical(p, root["state"], root["potentials"]);
        break;
      case ProblemKind::quantum:
        rc = recompute_quantum(p, root["state"], root["potentials"]);
        break;
      default:
        rc = recompute_symmetric(p, root["state"], root["potentials"]);
        break;
    }

    const auto fail = [&](const std::string& check, double stored, double recomputed,
                          double limit) {
      json j;
      j["failed_check"] = check;
      j["limit"] = limit;
      j["recomputed"] = recomputed;
      j["stored"] = stored;
      err << j.dump() << "\n";
      return 4;
    };

    const double scale = 1.0 + std::abs(stored_primal) + std::abs(stored_dual);
    if (std::abs(stored_gap - (stored_primal - stored_dual)) > 1e-12 * scale)
      return fail("gap", stored_gap, stored_primal - stored_dual, 1e-12 * scale);
    const double value_tol = 1e-9 * scale;
    if (std::abs(stored_primal - rc.primal) > value_tol)
      return fail("primal", stored_primal, rc.primal, value_tol);
    if (std::abs(stored_dual - rc.dual) > value_tol)
      return fail("dual", stored_dual, rc.dual, value_tol);
    const double max_res = *std::max_element(rc.residuals.begin(), rc.residuals.end());
    if (converged && max_res > 10.0 * tol)
      return fail("marginal_residuals", tol, max_res, 10.0 * tol);
    const double rec_limit = std::max(1e-8, 10.0 * tol);
    if (rc.reconstruction > rec_limit)
      return fail("reconstruction", 0.0, rc.reconstruction, rec_limit);

    json ok;
    ok["dual"] = rc.dual;
    ok["marginal_residuals"] = rc.residuals;
    ok["primal"] = rc.primal;
    ok["reconstruction_residual"] = rc.reconstruction;
    ok["verified"] = true;
    out << ok.dump() << "\n";
    return 0;
  } catch (const json::exception& e) {
    err << "error: report file: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace eot
