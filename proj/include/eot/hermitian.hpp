#pragma once

#include <vector>

#include "eot/cmatrix.hpp"

namespace eot {

// A square matrix certified Hermitian at construction.  The checked
// constructor rejects a Hermitian defect above 1e-12 relative to the largest
// entry; `hermitized` instead forces (M + M^dagger)/2 and is meant for
// results of arithmetic that are Hermitian up to roundoff.
class HermitianOperator {
 public:
  explicit HermitianOperator(CMatrix m);

  static HermitianOperator zero(int dim);
  static HermitianOperator identity(int dim);
  static HermitianOperator diagonal(const std::vector<double>& d);
  static HermitianOperator hermitized(CMatrix m);

  int dim() const { return m_.rows(); }
  const CMatrix& mat() const { return m_; }
  double trace() const;

  HermitianOperator& operator+=(const HermitianOperator& o);
  HermitianOperator& operator-=(const HermitianOperator& o);
  HermitianOperator& operator*=(double s);
  friend HermitianOperator operator+(HermitianOperator a, const HermitianOperator& b) {
    return a += b;
  }
  friend HermitianOperator operator-(HermitianOperator a, const HermitianOperator& b) {
    return a -= b;
  }
  friend HermitianOperator operator*(double s, HermitianOperator a) { return a *= s; }

 private:
  struct Unchecked {};
  HermitianOperator(CMatrix m, Unchecked) : m_(std::move(m)) {}
  CMatrix m_;
};

// Real inner product Tr(A B) of two Hermitian operators.
double herm_inner(const HermitianOperator& a, const HermitianOperator& b);

// A Hermitian operator certified to have unit trace (within 1e-12) and
// smallest eigenvalue >= -1e-12.
class DensityMatrix {
 public:
  explicit DensityMatrix(HermitianOperator op);
  int dim() const { return op_.dim(); }
  const HermitianOperator& op() const { return op_; }
  const CMatrix& mat() const { return op_.mat(); }

 private:
  HermitianOperator op_;
};

// Tensor-product factorisation (d_1, ..., d_N) of a composite space.
struct ProductSpace {
  explicit ProductSpace(std::vector<int> dims);
  int factors() const { return static_cast<int>(dims.size()); }

  std::vector<int> dims;
  int total_dim;
};

}  // namespace eot
