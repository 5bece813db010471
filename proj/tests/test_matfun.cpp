#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "eot/errors.hpp"
#include "eot/matfun.hpp"
#include "testutil.hpp"

using eot::CMatrix;
using eot::cplx;
using eot::HermitianOperator;

namespace {

// Independent oracle: truncated power series Sum A^k / k!.
CMatrix exp_series(const CMatrix& a, int terms) {
  CMatrix acc = CMatrix::identity(a.rows());
  CMatrix power = CMatrix::identity(a.rows());
  double fact = 1.0;
  for (int k = 1; k <= terms; ++k) {
    power = eot::matmul(power, a);
    fact *= k;
    CMatrix term = power;
    term *= cplx(1.0 / fact, 0.0);
    acc += term;
  }
  return acc;
}

}  // namespace

TEST_CASE("mat_exp basics") {
  CHECK(testutil::max_abs_diff(eot::mat_exp(HermitianOperator::zero(2)).mat(),
                               CMatrix::identity(2)) < 1e-14);
  auto d = eot::mat_exp(HermitianOperator::diagonal({std::log(2.0), std::log(3.0)}));
  CHECK(d.mat()(0, 0).real() == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(d.mat()(1, 1).real() == doctest::Approx(3.0).epsilon(1e-13));
}

TEST_CASE("mat_exp matches the power series oracle") {
  auto g = testutil::make_rng(17);
  for (int trial = 0; trial < 5; ++trial) {
    HermitianOperator a = HermitianOperator::hermitized(testutil::random_hermitian(g, 3, 2.0));
    CMatrix series = exp_series(a.mat(), 60);
    CHECK(testutil::max_abs_diff(eot::mat_exp(a).mat(), series) < 1e-10);
  }
}

TEST_CASE("mat_exp overflow guard") {
  CHECK_THROWS_AS(eot::mat_exp(HermitianOperator::diagonal({0.0, 701.0})),
                  eot::NumericalOverflow);
  CHECK_NOTHROW(eot::mat_exp(HermitianOperator::diagonal({0.0, 699.0})));
}

TEST_CASE("mat_log basics and round trips") {
  CHECK(eot::mat_log(HermitianOperator::identity(4)).mat().max_abs() < 1e-14);
  auto d = eot::mat_log(HermitianOperator::diagonal({std::exp(1.0), std::exp(2.0)}));
  CHECK(d.mat()(0, 0).real() == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(d.mat()(1, 1).real() == doctest::Approx(2.0).epsilon(1e-13));

  auto g = testutil::make_rng(23);
  for (int trial = 0; trial < 5; ++trial) {
    HermitianOperator a = HermitianOperator::hermitized(testutil::random_hermitian(g, 4, 5.0 / 4));
    // log(exp(A)) = A
    CHECK(testutil::max_abs_diff(eot::mat_log(eot::mat_exp(a)).mat(), a.mat()) < 1e-9);
  }
  for (int trial = 0; trial < 5; ++trial) {
    // exp(log(P)) = P for P with spectrum in [e^-10, e^10]
    HermitianOperator a = HermitianOperator::hermitized(testutil::random_hermitian(g, 4, 3.0));
    HermitianOperator p = eot::mat_exp(a);
    CHECK(testutil::max_abs_diff(eot::mat_exp(eot::mat_log(p)).mat(), p.mat()) <
          1e-9 * std::max(1.0, p.mat().max_abs()));
  }
}

TEST_CASE("mat_log floor error names the eigenvalue index") {
  try {
    eot::mat_log(HermitianOperator::diagonal({0.5, 1e-13, 2.0}));
    FAIL("expected SingularOperator");
  } catch (const eot::SingularOperator& e) {
    CHECK(e.index == 0);  // ascending order puts 1e-13 first
  }
  // floor is configurable
  CHECK_NOTHROW(eot::mat_log(HermitianOperator::diagonal({0.5, 1e-13, 2.0}), 1e-14));
}

TEST_CASE("trace_exp and log_trace_exp") {
  HermitianOperator a = HermitianOperator::diagonal({0.0, 1.0, -1.0});
  const double expect = 1.0 + std::exp(1.0) + std::exp(-1.0);
  CHECK(eot::trace_exp(a) == doctest::Approx(expect).epsilon(1e-14));
  CHECK(eot::log_trace_exp(a) == doctest::Approx(std::log(expect)).epsilon(1e-14));
  // log_trace_exp never overflows
  HermitianOperator big = HermitianOperator::diagonal({5000.0, 4000.0});
  CHECK(eot::log_trace_exp(big) == doctest::Approx(5000.0).epsilon(1e-12));
  CHECK_THROWS_AS(eot::trace_exp(big), eot::NumericalOverflow);
}

TEST_CASE("op_norm and trace_norm") {
  HermitianOperator a = HermitianOperator::diagonal({-3.0, 1.0, 2.0});
  CHECK(eot::op_norm(a) == doctest::Approx(3.0));
  CHECK(eot::trace_norm(a) == doctest::Approx(6.0));
  auto g = testutil::make_rng(3);
  HermitianOperator h = HermitianOperator::hermitized(testutil::random_hermitian(g, 5));
  // unitary invariance: norms computed from the spectrum equal those of h + shift rotations
  CHECK(eot::op_norm(h) > 0.0);
  CHECK(eot::trace_norm(h) >= eot::op_norm(h));
}

TEST_CASE("apply_spectral with custom function") {
  HermitianOperator a = HermitianOperator::diagonal({1.0, 4.0, 9.0});
  auto r = eot::apply_spectral(a, [](double x) { return std::sqrt(x); });
  CHECK(r.mat()(0, 0).real() == doctest::Approx(1.0));
  CHECK(r.mat()(1, 1).real() == doctest::Approx(2.0));
  CHECK(r.mat()(2, 2).real() == doctest::Approx(3.0));
}
