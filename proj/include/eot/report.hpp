#pragma once

#include <vector>

namespace eot {

// One row of the per-sweep convergence trace.
struct SweepRecord {
  int sweep = 0;
  double dual = 0.0;
  std::vector<double> residuals;  // one per marginal
};

// Shared result summary for the classical, quantum and symmetric solvers.
// Residuals are L1 for the classical solver and trace-norm otherwise.
struct SolveReport {
  double primal = 0.0;
  double dual = 0.0;
  double gap = 0.0;  // primal - dual
  std::vector<double> marginal_residuals;
  int iterations = 0;
  bool converged = false;
  std::vector<SweepRecord> trace;
};

}  // namespace eot
