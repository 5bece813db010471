#include "eot/sym_subspace.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "eot/errors.hpp"

namespace eot {
namespace {

long long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

int flat_index(const std::vector<int>& multi, int d) {
  int x = 0;
  for (int v : multi) x = x * d + v;
  return x;
}

// Occupation tuples (nu_0..nu_{d-1}) with sum n, lexicographic.
void occupation_tuples(int d, int n, std::vector<int>& cur,
                       std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == d - 1) {
    int used = std::accumulate(cur.begin(), cur.end(), 0);
    cur.push_back(n - used);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  const int used = std::accumulate(cur.begin(), cur.end(), 0);
  for (int v = 0; v <= n - used; ++v) {
    cur.push_back(v);
    occupation_tuples(d, n, cur, out);
    cur.pop_back();
  }
}

// Strictly increasing index tuples of length n over {0..d-1}, lexicographic.
void increasing_tuples(int d, int n, int start, std::vector<int>& cur,
                       std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == n) {
    out.push_back(cur);
    return;
  }
  for (int v = start; v < d; ++v) {
    cur.push_back(v);
    increasing_tuples(d, n, v + 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<std::vector<int>> all_permutations(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

int perm_sign(const std::vector<int>& sigma) {
  int inv = 0;
  for (std::size_t i = 0; i < sigma.size(); ++i)
    for (std::size_t j = i + 1; j < sigma.size(); ++j)
      if (sigma[i] > sigma[j]) ++inv;
  return (inv % 2 == 0) ? 1 : -1;
}

CMatrix permutation_operator(int d, int n, const std::vector<int>& sigma) {
  if (static_cast<int>(sigma.size()) != n)
    throw InvalidInput("permutation_operator: sigma length does not match n");
  const ProductSpace space(std::vector<int>(n, d));
  CMatrix p(space.total_dim, space.total_dim);
  std::vector<int> multi(n), target(n);
  for (int x = 0; x < space.total_dim; ++x) {
    int rem = x;
    for (int j = n - 1; j >= 0; --j) {
      multi[j] = rem % d;
      rem /= d;
    }
    for (int i = 0; i < n; ++i) target[sigma[i]] = multi[i];
    p(flat_index(target, d), x) = 1.0;
  }
  return p;
}

HermitianOperator symmetrize(const HermitianOperator& h, int d, int n) {
  const ProductSpace space(std::vector<int>(n, d));
  if (h.dim() != space.total_dim)
    throw InvalidInput("symmetrize: operator dim does not match d^n");
  CMatrix acc(h.dim(), h.dim());
  for (const std::vector<int>& sigma : all_permutations(n)) {
    const CMatrix p = permutation_operator(d, n, sigma);
    acc += matmul(matmul(p, h.mat()), p.adjoint());
  }
  acc *= cplx(1.0 / factorial(n), 0.0);
  return HermitianOperator::hermitized(std::move(acc));
}

SubspaceIsometry sym_isometry(int d, int n, Statistics stat) {
  if (d < 1) throw InvalidInput("sym_isometry: d must be >= 1");
  if (n < 1) throw InvalidInput("sym_isometry: N must be >= 1");
  if (stat == Statistics::fermions && d < n) {
    throw EmptySubspace("sym_isometry: antisymmetric subspace of (C^" + std::to_string(d) +
                        ")^" + std::to_string(n) + " is {0} (d < N)");
  }
  const ProductSpace space(std::vector<int>(n, d));

  SubspaceIsometry iso;
  iso.d = d;
  iso.n = n;
  iso.stat = stat;
  iso.full_dim = space.total_dim;

  const std::vector<std::vector<int>> perms = all_permutations(n);

  if (stat == Statistics::fermions) {
    std::vector<std::vector<int>> tuples;
    std::vector<int> cur;
    increasing_tuples(d, n, 0, cur, tuples);
    iso.sub_dim = static_cast<int>(tuples.size());
    iso.q = CMatrix(iso.full_dim, iso.sub_dim);
    const double norm = 1.0 / std::sqrt(factorial(n));
    std::vector<int> arranged(n);
    for (std::size_t col = 0; col < tuples.size(); ++col) {
      for (const std::vector<int>& sigma : perms) {
        for (int i = 0; i < n; ++i) arranged[i] = tuples[col][sigma[i]];
        iso.q(flat_index(arranged, d), static_cast<int>(col)) +=
            perm_sign(sigma) * norm;
      }
    }
  } else {
    std::vector<std::vector<int>> occs;
    std::vector<int> cur;
    occupation_tuples(d, n, cur, occs);
    iso.sub_dim = static_cast<int>(occs.size());
    if (iso.sub_dim != static_cast<int>(binom(d + n - 1, n)))
      throw NumericalFailure("sym_isometry: multiset count mismatch", 0.0);
    iso.q = CMatrix(iso.full_dim, iso.sub_dim);
    std::vector<int> arranged(n), modes(n);
    for (std::size_t col = 0; col < occs.size(); ++col) {
      // nondecreasing mode tuple for this occupation
      int k = 0;
      double occ_fact = 1.0;
      for (int mode = 0; mode < d; ++mode) {
        occ_fact *= factorial(occs[col][mode]);
        for (int rep = 0; rep < occs[col][mode]; ++rep) modes[k++] = mode;
      }
      const double norm = 1.0 / std::sqrt(factorial(n) * occ_fact);
      for (const std::vector<int>& sigma : perms) {
        for (int i = 0; i < n; ++i) arranged[i] = modes[sigma[i]];
        iso.q(flat_index(arranged, d), static_cast<int>(col)) += norm;
      }
    }
  }
  return iso;
}

CMatrix compress(const SubspaceIsometry& iso, const CMatrix& a) {
  if (a.rows() != iso.full_dim || a.cols() != iso.full_dim)
    throw InvalidInput("compress: operator dim does not match full_dim");
  return matmul(iso.q.adjoint(), matmul(a, iso.q));
}

CMatrix expand(const SubspaceIsometry& iso, const CMatrix& a_sub) {
  if (a_sub.rows() != iso.sub_dim || a_sub.cols() != iso.sub_dim)
    throw InvalidInput("expand: operator dim does not match sub_dim");
  return matmul(iso.q, matmul(a_sub, iso.q.adjoint()));
}

}  // namespace eot
