#pragma once

#include <functional>

#include "eot/eigh.hpp"
#include "eot/hermitian.hpp"

namespace eot {

// f applied on the spectrum: V diag(f(lambda)) V^dagger.
HermitianOperator apply_spectral(const HermitianOperator& a,
                                 const std::function<double(double)>& f);

// Same, but from an existing decomposition (saves re-diagonalising when the
// caller needs the eigenvalues too).
HermitianOperator spectral_synthesis(const EighResult& e,
                                     const std::function<double(double)>& f);

// Exponent above which e^x overflows our error budget (e^700 ~ 1e304).
inline constexpr double kExpCap = 700.0;

// Spectral exponential; throws NumericalOverflow when an eigenvalue
// exceeds kExpCap.
HermitianOperator mat_exp(const HermitianOperator& a);

// Spectral logarithm; throws SingularOperator (naming the eigenvalue index,
// ascending order) when an eigenvalue is <= eig_floor.
HermitianOperator mat_log(const HermitianOperator& a, double eig_floor = 1e-12);

// Sum of e^{lambda_i}; throws NumericalOverflow past kExpCap.
double trace_exp(const HermitianOperator& a);

// log(Sum of e^{lambda_i}), evaluated with a max-shift; never overflows.
double log_trace_exp(const HermitianOperator& a);

// Operator (spectral) norm: max |lambda|.
double op_norm(const HermitianOperator& a);

// Trace norm: sum |lambda|.
double trace_norm(const HermitianOperator& a);

}  // namespace eot
