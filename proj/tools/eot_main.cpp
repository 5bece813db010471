#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "eot/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"entropic optimal transport solver (classical, quantum, symmetric)"};
  app.require_subcommand(1);

  std::string solve_path;
  eot::SolveFlags flags;
  double tol = 0.0;
  int max_iter = 0;
  CLI::App* solve = app.add_subcommand("solve", "solve a problem file, write a report");
  solve->add_option("file", solve_path, "problem JSON file")->required();
  CLI::Option* tol_opt =
      solve->add_option("--tol", tol, "override the convergence tolerance");
  CLI::Option* iter_opt =
      solve->add_option("--max-iter", max_iter, "override the sweep cap");
  solve->add_option("--trace", flags.trace_path, "write a per-sweep CSV trace here");
  solve->add_flag("--no-state", flags.no_state, "omit the solved state from the report");

  std::string check_path;
  CLI::App* check = app.add_subcommand(
      "check-pauli", "classify a bosonic/fermionic marginal against the Pauli window");
  check->add_option("file", check_path, "problem JSON file")->required();

  std::string verify_path;
  CLI::App* verify =
      app.add_subcommand("verify", "recompute and check a report's stored solution");
  verify->add_option("report", verify_path, "report JSON file")->required();

  CLI11_PARSE(app, argc, argv);

  if (solve->parsed()) {
    if (*tol_opt) flags.tol = tol;
    if (*iter_opt) flags.max_iter = max_iter;
    return eot::cmd_solve(solve_path, flags, std::cout, std::cerr);
  }
  if (check->parsed()) return eot::cmd_check_pauli(check_path, std::cout, std::cerr);
  return eot::cmd_verify(verify_path, std::cout, std::cerr);
}
