#include "eot/matfun.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "eot/eigh.hpp"
#include "eot/errors.hpp"

namespace eot {
namespace {

HermitianOperator from_spectrum(const EighResult& e, const std::vector<double>& f) {
  const int n = e.vectors.rows();
  CMatrix out(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = r; c < n; ++c) {
      cplx s = 0.0;
      for (int k = 0; k < n; ++k)
        s += e.vectors(r, k) * f[k] * std::conj(e.vectors(c, k));
      out(r, c) = s;
      if (c != r) out(c, r) = std::conj(s);
    }
  return HermitianOperator::hermitized(std::move(out));
}

}  // namespace

HermitianOperator apply_spectral(const HermitianOperator& a,
                                 const std::function<double(double)>& f) {
  return spectral_synthesis(eigh(a.mat()), f);
}

HermitianOperator spectral_synthesis(const EighResult& e,
                                     const std::function<double(double)>& f) {
  std::vector<double> fv(e.values.size());
  for (std::size_t i = 0; i < fv.size(); ++i) fv[i] = f(e.values[i]);
  return from_spectrum(e, fv);
}

HermitianOperator mat_exp(const HermitianOperator& a) {
  const EighResult e = eigh(a.mat());
  if (!e.values.empty() && e.values.back() > kExpCap) {
    throw NumericalOverflow("mat_exp: eigenvalue " + std::to_string(e.values.back()) +
                            " exceeds the exponential cap " + std::to_string(kExpCap));
  }
  std::vector<double> fv(e.values.size());
  for (std::size_t i = 0; i < fv.size(); ++i) fv[i] = std::exp(e.values[i]);
  return from_spectrum(e, fv);
}

HermitianOperator mat_log(const HermitianOperator& a, double eig_floor) {
  const EighResult e = eigh(a.mat());
  std::vector<double> fv(e.values.size());
  for (std::size_t i = 0; i < fv.size(); ++i) {
    if (e.values[i] <= eig_floor) {
      throw SingularOperator("mat_log: eigenvalue " + std::to_string(e.values[i]) +
                                 " at index " + std::to_string(i) + " is at or below the floor " +
                                 std::to_string(eig_floor),
                             static_cast<int>(i));
    }
    fv[i] = std::log(e.values[i]);
  }
  return from_spectrum(e, fv);
}

double trace_exp(const HermitianOperator& a) {
  const std::vector<double> vals = eigh_values(a.mat());
  if (!vals.empty() && vals.back() > kExpCap) {
    throw NumericalOverflow("trace_exp: eigenvalue " + std::to_string(vals.back()) +
                            " exceeds the exponential cap " + std::to_string(kExpCap));
  }
  double s = 0.0;
  for (double v : vals) s += std::exp(v);
  return s;
}

double log_trace_exp(const HermitianOperator& a) {
  const std::vector<double> vals = eigh_values(a.mat());
  const double m = vals.back();
  double s = 0.0;
  for (double v : vals) s += std::exp(v - m);
  return m + std::log(s);
}

double op_norm(const HermitianOperator& a) {
  const std::vector<double> vals = eigh_values(a.mat());
  if (vals.empty()) return 0.0;
  return std::max(std::abs(vals.front()), std::abs(vals.back()));
}

double trace_norm(const HermitianOperator& a) {
  double s = 0.0;
  for (double v : eigh_values(a.mat())) s += std::abs(v);
  return s;
}

}  // namespace eot
