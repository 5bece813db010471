#pragma once

#include <optional>
#include <ostream>
#include <string>

namespace eot {

// Command-line overrides; unset fields defer to the problem file's solver
// block and then to the kind-specific defaults.
struct SolveFlags {
  std::optional<double> tol;
  std::optional<int> max_iter;
  std::string trace_path;  // empty: no trace CSV
  bool no_state = false;   // omit the solved state from the report
};

// Where cmd_solve writes its report: the input path with a trailing ".json"
// stripped, plus ".report.json".
std::string report_path_for(const std::string& input_path);

// Solves the problem file at `path`, writes <input>.report.json (and the
// trace CSV when requested).  Exit codes: 0 converged, 2 not converged
// within max_iter, 1 unreadable/invalid input, 3 Pauli-inadmissible
// fermionic marginal (status JSON on err).
int cmd_solve(const std::string& path, const SolveFlags& flags, std::ostream& out,
              std::ostream& err);

// Classifies the marginal of a bosonic/fermionic problem file against the
// fermionic admissibility window and prints the status JSON.  Exit codes:
// 0 strict, 2 boundary, 3 violates, 1 invalid input.
int cmd_check_pauli(const std::string& path, std::ostream& out, std::ostream& err);

// Recomputes primal, dual, marginal residuals and the exponential
// reconstruction residual from the state and potentials stored in a report
// and compares them with the stored values.  Exit codes: 0 all checks pass,
// 1 report unreadable or missing state/potentials, 4 a check failed (named
// in the err JSON).
int cmd_verify(const std::string& report_path, std::ostream& out, std::ostream& err);

}  // namespace eot
