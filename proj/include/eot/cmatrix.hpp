#pragma once

#include <complex>
#include <vector>

namespace eot {

using cplx = std::complex<double>;

// Dense row-major complex matrix.  This is the only matrix container in the
// library; Hermitian-certified wrappers live in hermitian.hpp.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(int rows, int cols);  // zero-initialised

  static CMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  cplx& operator()(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
  const cplx& operator()(int r, int c) const {
    return a_[static_cast<std::size_t>(r) * cols_ + c];
  }

  cplx* data() { return a_.data(); }
  const cplx* data() const { return a_.data(); }
  std::size_t size() const { return a_.size(); }

  CMatrix adjoint() const;
  cplx trace() const;

  // Largest |entry|.
  double max_abs() const;

  CMatrix& operator+=(const CMatrix& o);
  CMatrix& operator-=(const CMatrix& o);
  CMatrix& operator*=(cplx s);

  friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
  friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
  friend CMatrix operator*(cplx s, CMatrix a) { return a *= s; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<cplx> a_;
};

// Deviation from Hermitian symmetry: max |A - A^dagger| entrywise.
double herm_defect(const CMatrix& a);

// Frobenius norm.
double frob_norm(const CMatrix& a);

// A * B.  Dispatches to the parallel kernel above kMatmulParallelDim.
CMatrix matmul(const CMatrix& a, const CMatrix& b);

inline constexpr int kMatmulParallelDim = 96;

namespace kernels {
CMatrix matmul_serial(const CMatrix& a, const CMatrix& b);
CMatrix matmul_parallel(const CMatrix& a, const CMatrix& b);
}  // namespace kernels

}  // namespace eot
