#pragma once

// Shared helpers for unit and acceptance tests: seeded random instances and
// comparison utilities.  Test-only; not part of the library.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "eot/cmatrix.hpp"
#include "eot/eigh.hpp"

namespace testutil {

using eot::CMatrix;
using eot::cplx;

inline std::mt19937_64 make_rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline double unif(std::mt19937_64& g, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

inline int unif_int(std::mt19937_64& g, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(g);
}

inline CMatrix random_matrix(std::mt19937_64& g, int rows, int cols) {
  CMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = cplx(unif(g, -1.0, 1.0), unif(g, -1.0, 1.0));
  return m;
}

inline CMatrix random_hermitian(std::mt19937_64& g, int n, double scale = 1.0) {
  CMatrix m = random_matrix(g, n, n);
  CMatrix h = m.adjoint();
  h += m;
  h *= 0.5 * scale;
  return h;
}

// Random density matrix with smallest eigenvalue >= mix / n.
inline CMatrix random_density(std::mt19937_64& g, int n, double mix = 0.2) {
  CMatrix w = random_matrix(g, n, n);
  CMatrix p = eot::matmul(w, w.adjoint());
  const double tr = p.trace().real();
  CMatrix rho(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      rho(r, c) = (1.0 - mix) * p(r, c) / tr;
      if (r == c) rho(r, c) += mix / n;
    }
  return rho;
}

// Random point of the open probability simplex (every weight >= floor after
// normalisation of floor+uniform parts).
inline std::vector<double> random_simplex(std::mt19937_64& g, int n, double floor = 0.05) {
  std::vector<double> w(n);
  double s = 0.0;
  for (double& v : w) {
    v = floor + unif(g, 0.0, 1.0);
    s += v;
  }
  for (double& v : w) v /= s;
  return w;
}

inline double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  double m = 0.0;
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) m = std::max(m, std::abs(a(r, c) - b(r, c)));
  return m;
}

// || V diag(w) V^dagger - A ||_maxabs
inline double reconstruction_error(const eot::EighResult& e, const CMatrix& a) {
  const int n = a.rows();
  CMatrix rec(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      cplx s = 0.0;
      for (int k = 0; k < n; ++k)
        s += e.vectors(r, k) * e.values[k] * std::conj(e.vectors(c, k));
      rec(r, c) = s;
    }
  return max_abs_diff(rec, a);
}

// || V^dagger V - I ||_maxabs
inline double unitary_defect(const CMatrix& v) {
  CMatrix g = eot::matmul(v.adjoint(), v);
  g -= CMatrix::identity(v.cols());
  return g.max_abs();
}

}  // namespace testutil
