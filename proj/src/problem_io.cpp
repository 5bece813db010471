#include "eot/problem_io.hpp"

#include <json.hpp>

#include <string>
#include <utility>
#include <vector>

#include "eot/errors.hpp"

namespace eot {
namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& field, const std::string& msg) {
  throw InvalidInput("problem file: field '" + field + "' " + msg);
}

const json& need(const json& obj, const std::string& field) {
  const auto it = obj.find(field);
  if (it == obj.end()) bad(field, "is missing");
  return *it;
}

double get_number(const json& j, const std::string& field) {
  if (!j.is_number()) bad(field, "must be a number");
  return j.get<double>();
}

long get_integer(const json& j, const std::string& field) {
  if (!j.is_number_integer()) bad(field, "must be an integer");
  return j.get<long>();
}

std::vector<double> get_real_vector(const json& j, const std::string& field) {
  if (!j.is_array()) bad(field, "must be an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t k = 0; k < j.size(); ++k)
    out.push_back(get_number(j[k], field + "[" + std::to_string(k) + "]"));
  return out;
}

cplx get_complex(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    bad(field, "must be a [re, im] pair");
  return cplx(j[0].get<double>(), j[1].get<double>());
}

std::vector<cplx> get_complex_matrix(const json& j, const std::string& field, int dim) {
  if (!j.is_array()) bad(field, "must be an array of [re, im] pairs");
  if (static_cast<int>(j.size()) != dim * dim)
    bad(field, "has " + std::to_string(j.size()) + " entries, expected " +
                   std::to_string(dim) + "^2 = " + std::to_string(dim * dim) +
                   " (row-major)");
  std::vector<cplx> out;
  out.reserve(j.size());
  for (std::size_t k = 0; k < j.size(); ++k)
    out.push_back(get_complex(j[k], field + "[" + std::to_string(k) + "]"));
  return out;
}

ProblemKind parse_kind(const json& j) {
  if (!j.is_string()) bad("kind", "must be a string");
  const std::string s = j.get<std::string>();
  if (s == "classical") return ProblemKind::classical;
  if (s == "quantum") return ProblemKind::quantum;
  if (s == "bosonic") return ProblemKind::bosonic;
  if (s == "fermionic") return ProblemKind::fermionic;
  bad("kind", "must be one of classical, quantum, bosonic, fermionic (got '" + s + "')");
}

json complex_to_json(const std::vector<cplx>& v) {
  json out = json::array();
  for (const cplx& c : v) out.push_back(json::array({c.real(), c.imag()}));
  return out;
}

long total_dim(const std::vector<int>& dims) {
  long t = 1;
  for (int d : dims) t *= d;
  return t;
}

SolverOptions parse_solver(const json& root) {
  SolverOptions opts;
  if (!root.contains("solver")) return opts;
  const json& s = root["solver"];
  if (!s.is_object()) bad("solver", "must be an object");
  for (const auto& [key, value] : s.items()) {
    if (key == "tol") {
      opts.tol = get_number(value, "solver.tol");
      if (!(*opts.tol > 0.0)) bad("solver.tol", "must be positive");
    } else if (key == "max_iter") {
      opts.max_iter = static_cast<int>(get_integer(value, "solver.max_iter"));
      if (*opts.max_iter < 1) bad("solver.max_iter", "must be >= 1");
    } else if (key == "inner_tol") {
      opts.inner_tol = get_number(value, "solver.inner_tol");
      if (!(*opts.inner_tol > 0.0)) bad("solver.inner_tol", "must be positive");
    } else if (key == "seed") {
      opts.seed = get_integer(value, "solver.seed");
    } else {
      bad("solver." + key, "is not a recognised option");
    }
  }
  return opts;
}

HermitianOperator operator_from_flat(const std::vector<cplx>& flat, int dim,
                                     const std::string& field) {
  CMatrix m(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) m(r, c) = flat[static_cast<std::size_t>(r) * dim + c];
  try {
    return HermitianOperator(std::move(m));
  } catch (const InvalidInput& e) {
    bad(field, std::string("is not Hermitian (") + e.what() + ")");
  }
}

}  // namespace

const char* kind_name(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::classical: return "classical";
    case ProblemKind::quantum: return "quantum";
    case ProblemKind::bosonic: return "bosonic";
    default: return "fermionic";
  }
}

ProblemFile parse_problem(const std::string& text, bool require_operator) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("problem file: ") + e.what());
  }
  if (!root.is_object()) throw InvalidInput("problem file: root must be a JSON object");
  if (get_integer(need(root, "schema_version"), "schema_version") != 1)
    bad("schema_version", "must be 1");

  ProblemFile p;
  p.kind = parse_kind(need(root, "kind"));
  const bool symmetric_kind =
      p.kind == ProblemKind::bosonic || p.kind == ProblemKind::fermionic;

  const json& jdims = need(root, "dims");
  if (!jdims.is_array() || jdims.empty()) bad("dims", "must be a non-empty integer array");
  for (std::size_t k = 0; k < jdims.size(); ++k) {
    const long d = get_integer(jdims[k], "dims[" + std::to_string(k) + "]");
    if (d < 1) bad("dims[" + std::to_string(k) + "]", "must be >= 1");
    p.dims.push_back(static_cast<int>(d));
  }
  if (symmetric_kind)
    for (int d : p.dims)
      if (d != p.dims[0]) bad("dims", "must repeat one dimension for bosonic/fermionic kinds");

  if (require_operator || root.contains("epsilon")) {
    p.epsilon = get_number(need(root, "epsilon"), "epsilon");
    if (!(p.epsilon > 0.0)) bad("epsilon", "must be positive");
  }
  p.solver = parse_solver(root);

  if (p.kind == ProblemKind::classical) {
    if (root.contains("hamiltonian"))
      bad("hamiltonian", "does not apply to classical problems (use 'cost')");
    if (require_operator || root.contains("cost")) {
      p.cost = get_real_vector(need(root, "cost"), "cost");
      if (static_cast<long>(p.cost.size()) != total_dim(p.dims))
        bad("cost", "has " + std::to_string(p.cost.size()) + " entries, expected " +
                        std::to_string(total_dim(p.dims)) + " (row-major over dims)");
    }
    const json& jm = need(root, "marginals");
    if (!jm.is_array() || jm.size() != p.dims.size())
      bad("marginals", "must hold one weight vector per axis");
    for (std::size_t i = 0; i < jm.size(); ++i) {
      const std::string field = "marginals[" + std::to_string(i) + "]";
      p.marginals_real.push_back(get_real_vector(jm[i], field));
      if (static_cast<int>(p.marginals_real[i].size()) != p.dims[i])
        bad(field, "length does not match dims");
    }
    if (root.contains("refs")) {
      const json& jr = root["refs"];
      if (!jr.is_array() || jr.size() != p.dims.size())
        bad("refs", "must hold one weight vector per axis");
      for (std::size_t i = 0; i < jr.size(); ++i) {
        const std::string field = "refs[" + std::to_string(i) + "]";
        p.refs_real.push_back(get_real_vector(jr[i], field));
        if (static_cast<int>(p.refs_real[i].size()) != p.dims[i])
          bad(field, "length does not match dims");
      }
    }
    return p;
  }

  if (root.contains("cost")) bad("cost", "applies only to classical problems");
  if (require_operator || root.contains("hamiltonian"))
    p.hamiltonian = get_complex_matrix(need(root, "hamiltonian"), "hamiltonian",
                                       static_cast<int>(total_dim(p.dims)));

  const json& jm = need(root, "marginals");
  if (symmetric_kind) {
    if (root.contains("refs"))
      bad("refs", "does not apply to bosonic/fermionic problems");
    if (!jm.is_array() || jm.size() != 1)
      bad("marginals", "must hold exactly the one shared one-body marginal");
    p.marginals_herm.push_back(get_complex_matrix(jm[0], "marginals[0]", p.dims[0]));
    return p;
  }

  if (!jm.is_array() || jm.size() != p.dims.size())
    bad("marginals", "must hold one density matrix per factor");
  for (std::size_t i = 0; i < jm.size(); ++i)
    p.marginals_herm.push_back(
        get_complex_matrix(jm[i], "marginals[" + std::to_string(i) + "]", p.dims[i]));
  if (root.contains("refs")) {
    const json& jr = root["refs"];
    if (!jr.is_array() || jr.size() != p.dims.size())
      bad("refs", "must hold one operator per factor");
    for (std::size_t i = 0; i < jr.size(); ++i)
      p.refs_herm.push_back(
          get_complex_matrix(jr[i], "refs[" + std::to_string(i) + "]", p.dims[i]));
  }
  return p;
}

std::string serialize_problem(const ProblemFile& p) {
  json root;
  root["schema_version"] = 1;
  root["kind"] = kind_name(p.kind);
  root["epsilon"] = p.epsilon;
  root["dims"] = p.dims;

  if (p.kind == ProblemKind::classical) {
    if (!p.cost.empty()) root["cost"] = p.cost;
    root["marginals"] = p.marginals_real;
    if (!p.refs_real.empty()) root["refs"] = p.refs_real;
  } else {
    if (!p.hamiltonian.empty()) root["hamiltonian"] = complex_to_json(p.hamiltonian);
    json jm = json::array();
    for (const std::vector<cplx>& m : p.marginals_herm) jm.push_back(complex_to_json(m));
    root["marginals"] = jm;
    if (!p.refs_herm.empty()) {
      json jr = json::array();
      for (const std::vector<cplx>& m : p.refs_herm) jr.push_back(complex_to_json(m));
      root["refs"] = jr;
    }
  }

  json solver;
  if (p.solver.tol) solver["tol"] = *p.solver.tol;
  if (p.solver.max_iter) solver["max_iter"] = *p.solver.max_iter;
  if (p.solver.inner_tol) solver["inner_tol"] = *p.solver.inner_tol;
  if (p.solver.seed) solver["seed"] = *p.solver.seed;
  if (!solver.empty()) root["solver"] = solver;

  return root.dump(2) + "\n";
}

ClassicalProblem build_classical(const ProblemFile& p) {
  if (p.kind != ProblemKind::classical)
    throw InvalidInput("build_classical: file kind is not classical");
  if (p.cost.empty()) throw InvalidInput("problem file: field 'cost' is missing");
  NdArray cost(p.dims);
  for (std::size_t x = 0; x < p.cost.size(); ++x) cost.v[x] = p.cost[x];
  std::vector<DiscreteMeasure> ms;
  for (std::size_t i = 0; i < p.marginals_real.size(); ++i) {
    std::vector<double> ref = p.refs_real.empty()
                                  ? std::vector<double>(p.marginals_real[i].size(), 1.0)
                                  : p.refs_real[i];
    ms.emplace_back(p.marginals_real[i], std::move(ref));
  }
  return ClassicalProblem(std::move(cost), p.epsilon, std::move(ms));
}

QuantumProblem build_quantum(const ProblemFile& p) {
  if (p.kind != ProblemKind::quantum)
    throw InvalidInput("build_quantum: file kind is not quantum");
  if (p.hamiltonian.empty())
    throw InvalidInput("problem file: field 'hamiltonian' is missing");
  const int total = static_cast<int>(total_dim(p.dims));
  HermitianOperator h = operator_from_flat(p.hamiltonian, total, "hamiltonian");
  std::vector<DensityMatrix> gammas;
  for (std::size_t i = 0; i < p.marginals_herm.size(); ++i)
    gammas.emplace_back(operator_from_flat(p.marginals_herm[i], p.dims[i],
                                           "marginals[" + std::to_string(i) + "]"));
  std::vector<HermitianOperator> refs;
  for (std::size_t i = 0; i < p.refs_herm.size(); ++i)
    refs.push_back(operator_from_flat(p.refs_herm[i], p.dims[i],
                                      "refs[" + std::to_string(i) + "]"));
  return QuantumProblem(std::move(h), p.epsilon, std::move(gammas), std::move(refs));
}

SymmetricProblem build_symmetric(const ProblemFile& p) {
  if (p.kind != ProblemKind::bosonic && p.kind != ProblemKind::fermionic)
    throw InvalidInput("build_symmetric: file kind is not bosonic or fermionic");
  if (p.hamiltonian.empty())
    throw InvalidInput("problem file: field 'hamiltonian' is missing");
  const int d = p.dims[0];
  const int particles = static_cast<int>(p.dims.size());
  const Statistics stat =
      p.kind == ProblemKind::bosonic ? Statistics::bosons : Statistics::fermions;
  HermitianOperator h =
      operator_from_flat(p.hamiltonian, static_cast<int>(total_dim(p.dims)), "hamiltonian");
  DensityMatrix gamma(operator_from_flat(p.marginals_herm[0], d, "marginals[0]"));
  return SymmetricProblem(d, particles, stat, std::move(h), p.epsilon, std::move(gamma));
}

}  // namespace eot
