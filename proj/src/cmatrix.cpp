#include "eot/cmatrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "eot/errors.hpp"

namespace eot {

CMatrix::CMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) {
    throw InvalidInput("CMatrix: negative dimensions " + std::to_string(rows) +
                       "x" + std::to_string(cols));
  }
  a_.assign(static_cast<std::size_t>(rows) * cols, cplx(0.0, 0.0));
}

CMatrix CMatrix::identity(int n) {
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::adjoint() const {
  CMatrix m(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) m(c, r) = std::conj((*this)(r, c));
  return m;
}

cplx CMatrix::trace() const {
  cplx t = 0.0;
  for (int i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double CMatrix::max_abs() const {
  double m = 0.0;
  for (const cplx& v : a_) m = std::max(m, std::abs(v));
  return m;
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw InvalidInput("CMatrix::operator+=: shape mismatch");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw InvalidInput("CMatrix::operator-=: shape mismatch");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
  return *this;
}

CMatrix& CMatrix::operator*=(cplx s) {
  for (cplx& v : a_) v *= s;
  return *this;
}

double herm_defect(const CMatrix& a) {
  if (a.rows() != a.cols()) throw InvalidInput("herm_defect: matrix not square");
  double d = 0.0;
  for (int r = 0; r < a.rows(); ++r)
    for (int c = r; c < a.cols(); ++c)
      d = std::max(d, std::abs(a(r, c) - std::conj(a(c, r))));
  return d;
}

double frob_norm(const CMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a.data()[i]);
  return std::sqrt(s);
}

namespace kernels {

CMatrix matmul_serial(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows()) throw InvalidInput("matmul: inner dimension mismatch");
  CMatrix out(a.rows(), b.cols());
  const int n = a.rows(), k = a.cols(), m = b.cols();
  for (int i = 0; i < n; ++i) {
    cplx* orow = out.data() + static_cast<std::size_t>(i) * m;
    for (int l = 0; l < k; ++l) {
      const cplx ail = a(i, l);
      if (ail == cplx(0.0, 0.0)) continue;
      const cplx* brow = b.data() + static_cast<std::size_t>(l) * m;
      for (int j = 0; j < m; ++j) orow[j] += ail * brow[j];
    }
  }
  return out;
}

CMatrix matmul_parallel(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows()) throw InvalidInput("matmul: inner dimension mismatch");
  CMatrix out(a.rows(), b.cols());
  const int n = a.rows(), k = a.cols(), m = b.cols();
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    cplx* orow = out.data() + static_cast<std::size_t>(i) * m;
    for (int l = 0; l < k; ++l) {
      const cplx ail = a(i, l);
      if (ail == cplx(0.0, 0.0)) continue;
      const cplx* brow = b.data() + static_cast<std::size_t>(l) * m;
      for (int j = 0; j < m; ++j) orow[j] += ail * brow[j];
    }
  }
  return out;
}

}  // namespace kernels

CMatrix matmul(const CMatrix& a, const CMatrix& b) {
  if (a.rows() >= kMatmulParallelDim) return kernels::matmul_parallel(a, b);
  return kernels::matmul_serial(a, b);
}

}  // namespace eot
