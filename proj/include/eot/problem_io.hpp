#pragma once

#include <optional>
#include <string>
#include <vector>

#include "eot/classical.hpp"
#include "eot/quantum.hpp"
#include "eot/symmetric.hpp"

namespace eot {

enum class ProblemKind { classical, quantum, bosonic, fermionic };

const char* kind_name(ProblemKind kind);

// Optional per-file solver settings; unset fields fall back to the
// kind-specific solver defaults.  `seed` is accepted and echoed into reports
// for forward compatibility; the solvers are deterministic and ignore it.
struct SolverOptions {
  std::optional<double> tol;
  std::optional<int> max_iter;
  std::optional<double> inner_tol;
  std::optional<long> seed;
};

// In-memory form of a problem file (JSON, "schema_version": 1).  Exactly one
// of `cost` (classical, flat row-major reals) and `hamiltonian` (all other
// kinds, flat row-major [re, im] pairs) is populated.  For bosonic/fermionic
// kinds `dims` holds `particles` copies of the one-particle dimension and
// `marginals_herm` holds the single shared one-body marginal.
struct ProblemFile {
  ProblemKind kind = ProblemKind::classical;
  double epsilon = 1.0;
  std::vector<int> dims;

  std::vector<double> cost;
  std::vector<cplx> hamiltonian;

  std::vector<std::vector<double>> marginals_real;
  std::vector<std::vector<double>> refs_real;  // empty: all-ones references
  std::vector<std::vector<cplx>> marginals_herm;
  std::vector<std::vector<cplx>> refs_herm;    // empty: identity references

  SolverOptions solver;
};

// Parses and validates problem-file text.  Messages name the offending
// field.  With `require_operator` false the cost/Hamiltonian and epsilon may
// be absent (enough for check-pauli, which only needs the marginal).
ProblemFile parse_problem(const std::string& text, bool require_operator = true);

// Canonical serialization: sorted keys, two-space indent, trailing newline.
// parse_problem(serialize_problem(p)) reproduces p, and serializing again
// reproduces the same bytes.
std::string serialize_problem(const ProblemFile& p);

// Builders; each throws InvalidInput if the file does not carry the fields
// its kind needs.
ClassicalProblem build_classical(const ProblemFile& p);
QuantumProblem build_quantum(const ProblemFile& p);
SymmetricProblem build_symmetric(const ProblemFile& p);

}  // namespace eot
