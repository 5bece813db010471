#pragma once

#include <vector>

#include "eot/hermitian.hpp"

namespace eot {

// Kronecker product, row-major composite indexing: (r1*r2_dim + r2, ...).
CMatrix kron(const CMatrix& a, const CMatrix& b);
HermitianOperator kron(const HermitianOperator& a, const HermitianOperator& b);

// Marginal onto factor `axis` (0-based): traces out every other factor.
// Satisfies Tr(result * A) = Tr(g * embed(A, space, axis)).
HermitianOperator partial_trace(const HermitianOperator& g, const ProductSpace& space,
                                int axis);

// 1 x ... x A x ... x 1 with A in slot `axis`.
HermitianOperator embed(const HermitianOperator& a, const ProductSpace& space, int axis);

// Sum of embeddings: terms[0] (+) terms[1] (+) ... on the space whose dims
// are the terms' dims.
HermitianOperator kron_sum(const std::vector<HermitianOperator>& terms);

// Conjugation by the permutation unitary that cycles factor `axis` to the
// last slot (all factors must have equal dimension):
//   on products, B_0 x...x B_axis x...x B_{N-1}  ->
//   B_0 x...x B_{axis-1} x B_{axis+1} x...x B_{N-1} x B_axis.
HermitianOperator permute_conjugate(const HermitianOperator& a, const ProductSpace& space,
                                    int axis);

// Dispatch threshold: partial_trace runs its OpenMP kernel at or above this
// total dimension.
inline constexpr int kPartialTraceParallelDim = 4096;

namespace kernels {
CMatrix partial_trace_serial(const CMatrix& g, const std::vector<int>& dims, int axis);
CMatrix partial_trace_parallel(const CMatrix& g, const std::vector<int>& dims, int axis);
}  // namespace kernels

}  // namespace eot
