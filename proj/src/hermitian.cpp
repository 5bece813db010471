#include "eot/hermitian.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "eot/eigh.hpp"
#include "eot/errors.hpp"

namespace eot {
namespace {

CMatrix force_hermitian(CMatrix m) {
  for (int r = 0; r < m.rows(); ++r) {
    m(r, r) = m(r, r).real();
    for (int c = r + 1; c < m.cols(); ++c) {
      const cplx v = 0.5 * (m(r, c) + std::conj(m(c, r)));
      m(r, c) = v;
      m(c, r) = std::conj(v);
    }
  }
  return m;
}

}  // namespace

HermitianOperator::HermitianOperator(CMatrix m) : m_() {
  if (m.rows() != m.cols()) {
    throw InvalidInput("HermitianOperator: matrix is " + std::to_string(m.rows()) +
                       "x" + std::to_string(m.cols()) + ", not square");
  }
  const double defect = herm_defect(m);
  if (defect > 1e-12 * std::max(m.max_abs(), 1e-300)) {
    throw InvalidInput("HermitianOperator: Hermitian defect " + std::to_string(defect) +
                       " exceeds tolerance");
  }
  m_ = force_hermitian(std::move(m));
}

HermitianOperator HermitianOperator::zero(int dim) {
  return HermitianOperator(CMatrix(dim, dim), Unchecked{});
}

HermitianOperator HermitianOperator::identity(int dim) {
  return HermitianOperator(CMatrix::identity(dim), Unchecked{});
}

HermitianOperator HermitianOperator::diagonal(const std::vector<double>& d) {
  CMatrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = d[i];
  return HermitianOperator(std::move(m), Unchecked{});
}

HermitianOperator HermitianOperator::hermitized(CMatrix m) {
  if (m.rows() != m.cols())
    throw InvalidInput("HermitianOperator::hermitized: matrix not square");
  return HermitianOperator(force_hermitian(std::move(m)), Unchecked{});
}

double HermitianOperator::trace() const { return m_.trace().real(); }

HermitianOperator& HermitianOperator::operator+=(const HermitianOperator& o) {
  m_ += o.m_;
  return *this;
}

HermitianOperator& HermitianOperator::operator-=(const HermitianOperator& o) {
  m_ -= o.m_;
  return *this;
}

HermitianOperator& HermitianOperator::operator*=(double s) {
  m_ *= cplx(s, 0.0);
  return *this;
}

double herm_inner(const HermitianOperator& a, const HermitianOperator& b) {
  if (a.dim() != b.dim()) throw InvalidInput("herm_inner: dimension mismatch");
  // Tr(AB) = sum_{rc} A(r,c) B(c,r); real for Hermitian A, B.
  cplx s = 0.0;
  for (int r = 0; r < a.dim(); ++r)
    for (int c = 0; c < a.dim(); ++c) s += a.mat()(r, c) * b.mat()(c, r);
  return s.real();
}

DensityMatrix::DensityMatrix(HermitianOperator op) : op_(std::move(op)) {
  const double tr = op_.trace();
  if (std::abs(tr - 1.0) > 1e-12) {
    throw InvalidInput("DensityMatrix: trace " + std::to_string(tr) + " is not 1");
  }
  const std::vector<double> vals = eigh_values(op_.mat());
  if (!vals.empty() && vals.front() < -1e-12) {
    throw InvalidInput("DensityMatrix: negative eigenvalue " + std::to_string(vals.front()));
  }
}

ProductSpace::ProductSpace(std::vector<int> dims_in) : dims(std::move(dims_in)), total_dim(1) {
  if (dims.empty()) throw InvalidInput("ProductSpace: needs at least one factor");
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (dims[i] < 1) {
      throw InvalidInput("ProductSpace: dims[" + std::to_string(i) + "] = " +
                         std::to_string(dims[i]) + " is not positive");
    }
    if (total_dim > (1 << 20) / dims[i]) {
      throw InvalidInput("ProductSpace: total dimension exceeds the 2^20 safety cap");
    }
    total_dim *= dims[i];
  }
}

}  // namespace eot
