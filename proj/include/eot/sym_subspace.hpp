#pragma once

#include <vector>

#include "eot/hermitian.hpp"

namespace eot {

enum class Statistics { bosons, fermions };

// Orthonormal basis Q of the symmetric (bosons) or antisymmetric (fermions)
// subspace of (C^d)^(x n), as columns in the full product space.
// Basis ordering: bosons by lexicographic occupation tuples (nu_0..nu_{d-1}),
// fermions by lexicographic strictly increasing index tuples.
struct SubspaceIsometry {
  int d = 0;
  int n = 0;
  Statistics stat = Statistics::bosons;
  int full_dim = 0;
  int sub_dim = 0;
  CMatrix q;  // full_dim x sub_dim, Q^dagger Q = I
};

// Builds the isometry; throws EmptySubspace for fermions with d < n.
SubspaceIsometry sym_isometry(int d, int n, Statistics stat);

// Q^dagger A Q.
CMatrix compress(const SubspaceIsometry& iso, const CMatrix& a);

// Q A_sub Q^dagger.
CMatrix expand(const SubspaceIsometry& iso, const CMatrix& a_sub);

// All permutations of {0..n-1} in lexicographic order.
std::vector<std::vector<int>> all_permutations(int n);

// Parity of a permutation: +1 / -1.
int perm_sign(const std::vector<int>& sigma);

// The unitary P with P e_{x_0 x...x x_{n-1}} = e_{y}, y[sigma[i]] = x[i]
// (factor i moves to slot sigma[i]), on (C^d)^(x n).
CMatrix permutation_operator(int d, int n, const std::vector<int>& sigma);

// Group average (1/n!) Sum_sigma P_sigma H P_sigma^dagger; the result
// commutes with every factor permutation.
HermitianOperator symmetrize(const HermitianOperator& h, int d, int n);

}  // namespace eot
