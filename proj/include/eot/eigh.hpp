#pragma once

#include <vector>

#include "eot/cmatrix.hpp"

namespace eot {

// Spectral decomposition A = V diag(w) V^dagger of a Hermitian matrix.
// Eigenvalues ascending; eigenvector k is column k of `vectors`.
struct EighResult {
  std::vector<double> values;
  CMatrix vectors;
};

// Hermitian eigendecomposition by Jacobi rotations.  Rejects matrices whose
// Hermitian defect exceeds 1e-12 relative to the largest entry.  Dispatches
// to the round-robin parallel kernel above kEighParallelDim.
EighResult eigh(const CMatrix& a);

// Eigenvalues only (skips accumulating the rotations; ~2x faster).
std::vector<double> eigh_values(const CMatrix& a);

inline constexpr int kEighParallelDim = 128;

namespace kernels {
// Classical cyclic-by-rows Jacobi sweep ordering.
EighResult eigh_serial(const CMatrix& a, bool want_vectors = true);
// Round-robin tournament ordering: each round rotates a set of disjoint
// pivot pairs, so the column/row updates of a round are independent and
// run under OpenMP.  Rotation angles are read from a snapshot taken at the
// start of the round, which makes the result identical for any thread
// count.
EighResult eigh_parallel(const CMatrix& a, bool want_vectors = true);
}  // namespace kernels

}  // namespace eot
