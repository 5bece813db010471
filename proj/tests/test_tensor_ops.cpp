#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "eot/errors.hpp"
#include "eot/matfun.hpp"
#include "eot/sym_subspace.hpp"
#include "eot/tensor_ops.hpp"
#include "testutil.hpp"

using eot::CMatrix;
using eot::cplx;
using eot::HermitianOperator;
using eot::ProductSpace;

TEST_CASE("kron on small blocks") {
  CMatrix a(2, 2), b(2, 2);
  a(0, 0) = 1.0;
  a(0, 1) = 2.0;
  b(1, 1) = cplx(0, 1);
  CMatrix k = eot::kron(a, b);
  CHECK(k.rows() == 4);
  CHECK(k(1, 1) == cplx(0, 1));   // a(0,0)*b(1,1)
  CHECK(k(1, 3) == cplx(0, 2));   // a(0,1)*b(1,1)
  CHECK(k(3, 3) == cplx(0, 0));
}

TEST_CASE("embed basics") {
  ProductSpace s({2, 2});
  CHECK(testutil::max_abs_diff(
            eot::embed(HermitianOperator::identity(2), s, 0).mat(),
            CMatrix::identity(4)) == 0.0);
  CHECK(testutil::max_abs_diff(
            eot::embed(HermitianOperator::identity(2), s, 1).mat(),
            CMatrix::identity(4)) == 0.0);

  auto e = eot::embed(HermitianOperator::diagonal({1.0, 0.0}), s, 0);
  CHECK(testutil::max_abs_diff(e.mat(),
                               HermitianOperator::diagonal({1, 1, 0, 0}).mat()) == 0.0);

  // embed(A,0) * embed(B,1) = A (x) B
  auto g = testutil::make_rng(8);
  ProductSpace s23({2, 3});
  HermitianOperator a = HermitianOperator::hermitized(testutil::random_hermitian(g, 2));
  HermitianOperator b = HermitianOperator::hermitized(testutil::random_hermitian(g, 3));
  CMatrix prod = eot::matmul(eot::embed(a, s23, 0).mat(), eot::embed(b, s23, 1).mat());
  CHECK(testutil::max_abs_diff(prod, eot::kron(a.mat(), b.mat())) < 1e-14);

  CHECK_THROWS_AS(eot::embed(a, s23, 1), eot::InvalidInput);  // dim mismatch
  CHECK_THROWS_AS(eot::embed(a, s23, 2), eot::InvalidInput);  // axis range
}

TEST_CASE("partial_trace basics") {
  auto g = testutil::make_rng(13);
  ProductSpace s({2, 3});

  // product state: partial_trace(A (x) B, 0) = A * Tr B
  HermitianOperator a = HermitianOperator::hermitized(testutil::random_hermitian(g, 2));
  CMatrix b = testutil::random_density(g, 3);  // trace 1
  HermitianOperator ab = HermitianOperator::hermitized(eot::kron(a.mat(), b));
  CHECK(testutil::max_abs_diff(eot::partial_trace(ab, s, 0).mat(), a.mat()) < 1e-13);

  // maximally mixed
  HermitianOperator mix = HermitianOperator::identity(6);
  mix *= 1.0 / 6.0;
  auto m1 = eot::partial_trace(mix, s, 1);
  CHECK(testutil::max_abs_diff(m1.mat(), (1.0 / 3.0) * HermitianOperator::identity(3).mat()) <
        1e-14);

  // trace preservation
  HermitianOperator gfull = HermitianOperator::hermitized(testutil::random_hermitian(g, 6));
  for (int axis : {0, 1}) {
    CHECK(eot::partial_trace(gfull, s, axis).trace() ==
          doctest::Approx(gfull.trace()).epsilon(1e-12));
  }
  CHECK_THROWS_AS(eot::partial_trace(a, s, 0), eot::InvalidInput);
}

TEST_CASE("partial_trace defining identity over a Hermitian basis") {
  auto g = testutil::make_rng(29);
  ProductSpace s({2, 2});
  HermitianOperator gamma = HermitianOperator::hermitized(testutil::random_hermitian(g, 4));
  for (int axis : {0, 1}) {
    HermitianOperator marg = eot::partial_trace(gamma, s, axis);
    // basis of 2x2 Hermitian space: diag units + real/imag off-diagonal units
    std::vector<CMatrix> basis;
    for (int i = 0; i < 2; ++i) {
      CMatrix e(2, 2);
      e(i, i) = 1.0;
      basis.push_back(e);
    }
    CMatrix re(2, 2), im(2, 2);
    re(0, 1) = re(1, 0) = 1.0;
    im(0, 1) = cplx(0, 1);
    im(1, 0) = cplx(0, -1);
    basis.push_back(re);
    basis.push_back(im);
    for (const CMatrix& e : basis) {
      HermitianOperator a = HermitianOperator::hermitized(e);
      const double lhs = eot::herm_inner(marg, a);
      const double rhs = eot::herm_inner(gamma, eot::embed(a, s, axis));
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
  }
}

TEST_CASE("partial_trace inverts embed up to the complementary dimension") {
  auto g = testutil::make_rng(37);
  ProductSpace s({2, 3, 2});
  for (int axis : {0, 1, 2}) {
    HermitianOperator a =
        HermitianOperator::hermitized(testutil::random_hermitian(g, s.dims[axis]));
    HermitianOperator back = eot::partial_trace(eot::embed(a, s, axis), s, axis);
    const double comp = s.total_dim / s.dims[axis];
    back *= 1.0 / comp;
    CHECK(testutil::max_abs_diff(back.mat(), a.mat()) < 1e-12);
  }
}

TEST_CASE("partial_trace serial and parallel kernels agree") {
  auto g = testutil::make_rng(41);
  std::vector<int> dims{4, 4, 4, 4};  // total 256
  CMatrix gm = testutil::random_hermitian(g, 256);
  for (int axis = 0; axis < 4; ++axis) {
    CMatrix s = eot::kernels::partial_trace_serial(gm, dims, axis);
    CMatrix p = eot::kernels::partial_trace_parallel(gm, dims, axis);
    CHECK(testutil::max_abs_diff(s, p) == 0.0);
  }
}

TEST_CASE("kron_sum") {
  CHECK(eot::kron_sum({HermitianOperator::zero(2), HermitianOperator::zero(3)})
            .mat()
            .max_abs() == 0.0);
  auto ks = eot::kron_sum({HermitianOperator::diagonal({1.0, 2.0}),
                           HermitianOperator::diagonal({10.0, 20.0})});
  CHECK(testutil::max_abs_diff(ks.mat(),
                               HermitianOperator::diagonal({11, 21, 12, 22}).mat()) == 0.0);
  CHECK_THROWS_AS(eot::kron_sum({}), eot::InvalidInput);

  // exp(U (+) V) = exp U (x) exp V
  auto g = testutil::make_rng(43);
  HermitianOperator u = HermitianOperator::hermitized(testutil::random_hermitian(g, 2));
  HermitianOperator v = HermitianOperator::hermitized(testutil::random_hermitian(g, 3));
  CMatrix lhs = eot::mat_exp(eot::kron_sum({u, v})).mat();
  CMatrix rhs = eot::kron(eot::mat_exp(u).mat(), eot::mat_exp(v).mat());
  CHECK(testutil::max_abs_diff(lhs, rhs) < 1e-12);
}

TEST_CASE("permute_conjugate cycles a factor to the last slot") {
  auto g = testutil::make_rng(47);
  ProductSpace s({2, 2, 2});
  HermitianOperator b = HermitianOperator::hermitized(testutil::random_hermitian(g, 2));
  HermitianOperator c = HermitianOperator::hermitized(testutil::random_hermitian(g, 2));
  HermitianOperator d = HermitianOperator::hermitized(testutil::random_hermitian(g, 2));
  HermitianOperator bcd =
      HermitianOperator::hermitized(eot::kron(b.mat(), eot::kron(c.mat(), d.mat())));
  HermitianOperator cdb =
      HermitianOperator::hermitized(eot::kron(c.mat(), eot::kron(d.mat(), b.mat())));
  CHECK(testutil::max_abs_diff(eot::permute_conjugate(bcd, s, 0).mat(), cdb.mat()) < 1e-14);

  CHECK(testutil::max_abs_diff(
            eot::permute_conjugate(HermitianOperator::identity(8), s, 1).mat(),
            CMatrix::identity(8)) == 0.0);

  ProductSpace bad({2, 3});
  HermitianOperator h6 = HermitianOperator::identity(6);
  CHECK_THROWS_AS(eot::permute_conjugate(h6, bad, 0), eot::InvalidInput);
}

TEST_CASE("permute_conjugate against the explicit permutation unitary") {
  auto g = testutil::make_rng(53);
  const int dloc = 2, n = 3;
  ProductSpace s(std::vector<int>(n, dloc));
  HermitianOperator a = HermitianOperator::hermitized(testutil::random_hermitian(g, s.total_dim));
  for (int axis = 0; axis < n; ++axis) {
    // factor `axis` goes to the last slot, later factors shift left
    std::vector<int> sigma(n);
    for (int j = 0; j < n; ++j) sigma[j] = (j < axis) ? j : (j == axis ? n - 1 : j - 1);
    CMatrix p = eot::permutation_operator(dloc, n, sigma);
    CMatrix expect = eot::matmul(p, eot::matmul(a.mat(), p.adjoint()));
    HermitianOperator got = eot::permute_conjugate(a, s, axis);
    CHECK(testutil::max_abs_diff(got.mat(), expect) < 1e-14);
    // applying the inverse recovers A
    CMatrix back = eot::matmul(p.adjoint(), eot::matmul(got.mat(), p));
    CHECK(testutil::max_abs_diff(back, a.mat()) < 1e-14);
  }
}

TEST_CASE("symmetrized operators are permutation invariant") {
  auto g = testutil::make_rng(59);
  HermitianOperator m = HermitianOperator::hermitized(testutil::random_hermitian(g, 8));
  HermitianOperator h = eot::symmetrize(m, 2, 3);
  ProductSpace s({2, 2, 2});
  for (int axis = 0; axis < 3; ++axis)
    CHECK(testutil::max_abs_diff(eot::permute_conjugate(h, s, axis).mat(), h.mat()) < 1e-13);
}

TEST_CASE("permutation operators form a signed representation") {
  // transposition has sign -1; composition matches matrix product
  CHECK(eot::perm_sign({1, 0}) == -1);
  CHECK(eot::perm_sign({0, 1, 2}) == 1);
  CHECK(eot::perm_sign({1, 2, 0}) == 1);
  auto perms = eot::all_permutations(3);
  CHECK(perms.size() == 6);
  const int dloc = 2;
  for (const auto& s1 : perms)
    for (const auto& s2 : perms) {
      std::vector<int> comp(3);
      for (int i = 0; i < 3; ++i) comp[i] = s1[s2[i]];
      CMatrix lhs = eot::matmul(eot::permutation_operator(dloc, 3, s1),
                                eot::permutation_operator(dloc, 3, s2));
      CMatrix rhs = eot::permutation_operator(dloc, 3, comp);
      CHECK(testutil::max_abs_diff(lhs, rhs) == 0.0);
    }
}

TEST_CASE("sym_isometry fermions d=2 N=2: the single Slater determinant") {
  auto iso = eot::sym_isometry(2, 2, eot::Statistics::fermions);
  CHECK(iso.sub_dim == 1);
  CHECK(iso.full_dim == 4);
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(iso.q(1, 0) - cplx(r, 0)) < 1e-15);   // e0 (x) e1
  CHECK(std::abs(iso.q(2, 0) - cplx(-r, 0)) < 1e-15);  // e1 (x) e0
  CHECK(std::abs(iso.q(0, 0)) == 0.0);
  CHECK(std::abs(iso.q(3, 0)) == 0.0);
}

TEST_CASE("sym_isometry dimensions and orthonormality") {
  struct Case {
    int d, n;
    eot::Statistics stat;
    int expect;
  };
  for (const Case& c : {Case{2, 2, eot::Statistics::bosons, 3},
                        Case{3, 2, eot::Statistics::fermions, 3},
                        Case{3, 2, eot::Statistics::bosons, 6},
                        Case{4, 2, eot::Statistics::fermions, 6},
                        Case{2, 3, eot::Statistics::bosons, 4},
                        Case{3, 3, eot::Statistics::fermions, 1}}) {
    auto iso = eot::sym_isometry(c.d, c.n, c.stat);
    CHECK(iso.sub_dim == c.expect);
    CMatrix gram = eot::matmul(iso.q.adjoint(), iso.q);
    CHECK(testutil::max_abs_diff(gram, CMatrix::identity(iso.sub_dim)) < 1e-12);
  }
  CHECK_THROWS_AS(eot::sym_isometry(2, 3, eot::Statistics::fermions), eot::EmptySubspace);
}

TEST_CASE("Q Q^dagger equals the group-average projector") {
  for (auto stat : {eot::Statistics::bosons, eot::Statistics::fermions}) {
    for (auto [dloc, n] : {std::pair{2, 2}, std::pair{3, 2}, std::pair{2, 3}}) {
      if (stat == eot::Statistics::fermions && dloc < n) continue;
      auto iso = eot::sym_isometry(dloc, n, stat);
      CMatrix proj = eot::matmul(iso.q, iso.q.adjoint());
      CMatrix avg(iso.full_dim, iso.full_dim);
      for (const auto& sigma : eot::all_permutations(n)) {
        CMatrix p = eot::permutation_operator(dloc, n, sigma);
        if (stat == eot::Statistics::fermions && eot::perm_sign(sigma) < 0)
          p *= cplx(-1.0, 0.0);
        avg += p;
      }
      double fact = 1.0;
      for (int i = 2; i <= n; ++i) fact *= i;
      avg *= cplx(1.0 / fact, 0.0);
      CHECK(testutil::max_abs_diff(proj, avg) < 1e-10);
      // projector laws
      CMatrix proj2 = eot::matmul(proj, proj);
      CHECK(testutil::max_abs_diff(proj2, proj) < 1e-10);
      CHECK(eot::herm_defect(proj) < 1e-12);
    }
  }
}
