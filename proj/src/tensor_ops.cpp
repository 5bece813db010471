#include "eot/tensor_ops.hpp"

#include <string>

#include "eot/errors.hpp"

namespace eot {
namespace {

void check_axis(const ProductSpace& space, int axis, const char* who) {
  if (axis < 0 || axis >= space.factors()) {
    throw InvalidInput(std::string(who) + ": axis " + std::to_string(axis) +
                       " out of range for " + std::to_string(space.factors()) + " factors");
  }
}

// Block geometry of factor `axis` inside the row-major composite index:
// flat = outer*(dim*inner) + x*inner + in.
struct AxisBlocks {
  int dim, inner, outer;
};

AxisBlocks axis_blocks(const std::vector<int>& dims, int axis) {
  AxisBlocks b{dims[axis], 1, 1};
  for (std::size_t j = axis + 1; j < dims.size(); ++j) b.inner *= dims[j];
  for (int j = 0; j < axis; ++j) b.outer *= dims[j];
  return b;
}

}  // namespace

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int ra = 0; ra < a.rows(); ++ra)
    for (int ca = 0; ca < a.cols(); ++ca) {
      const cplx va = a(ra, ca);
      if (va == cplx(0.0, 0.0)) continue;
      for (int rb = 0; rb < b.rows(); ++rb)
        for (int cb = 0; cb < b.cols(); ++cb)
          out(ra * b.rows() + rb, ca * b.cols() + cb) = va * b(rb, cb);
    }
  return out;
}

HermitianOperator kron(const HermitianOperator& a, const HermitianOperator& b) {
  return HermitianOperator::hermitized(kron(a.mat(), b.mat()));
}

namespace kernels {

CMatrix partial_trace_serial(const CMatrix& g, const std::vector<int>& dims, int axis) {
  const AxisBlocks bl = axis_blocks(dims, axis);
  const int stride = bl.dim * bl.inner;
  CMatrix out(bl.dim, bl.dim);
  for (int a = 0; a < bl.dim; ++a)
    for (int b = 0; b < bl.dim; ++b) {
      cplx s = 0.0;
      for (int o = 0; o < bl.outer; ++o)
        for (int in = 0; in < bl.inner; ++in)
          s += g(o * stride + a * bl.inner + in, o * stride + b * bl.inner + in);
      out(a, b) = s;
    }
  return out;
}

CMatrix partial_trace_parallel(const CMatrix& g, const std::vector<int>& dims, int axis) {
  const AxisBlocks bl = axis_blocks(dims, axis);
  const int stride = bl.dim * bl.inner;
  CMatrix out(bl.dim, bl.dim);
#pragma omp parallel for collapse(2) schedule(static)
  for (int a = 0; a < bl.dim; ++a)
    for (int b = 0; b < bl.dim; ++b) {
      cplx s = 0.0;
      for (int o = 0; o < bl.outer; ++o)
        for (int in = 0; in < bl.inner; ++in)
          s += g(o * stride + a * bl.inner + in, o * stride + b * bl.inner + in);
      out(a, b) = s;
    }
  return out;
}

}  // namespace kernels

HermitianOperator partial_trace(const HermitianOperator& g, const ProductSpace& space,
                                int axis) {
  check_axis(space, axis, "partial_trace");
  if (g.dim() != space.total_dim) {
    throw InvalidInput("partial_trace: operator dim " + std::to_string(g.dim()) +
                       " does not match space total_dim " + std::to_string(space.total_dim));
  }
  const CMatrix out = (space.total_dim >= kPartialTraceParallelDim)
                          ? kernels::partial_trace_parallel(g.mat(), space.dims, axis)
                          : kernels::partial_trace_serial(g.mat(), space.dims, axis);
  return HermitianOperator::hermitized(out);
}

HermitianOperator embed(const HermitianOperator& a, const ProductSpace& space, int axis) {
  check_axis(space, axis, "embed");
  if (a.dim() != space.dims[axis]) {
    throw InvalidInput("embed: operator dim " + std::to_string(a.dim()) +
                       " does not match dims[" + std::to_string(axis) + "] = " +
                       std::to_string(space.dims[axis]));
  }
  const AxisBlocks bl = axis_blocks(space.dims, axis);
  const int stride = bl.dim * bl.inner;
  CMatrix out(space.total_dim, space.total_dim);
  for (int o = 0; o < bl.outer; ++o)
    for (int x = 0; x < bl.dim; ++x)
      for (int y = 0; y < bl.dim; ++y) {
        const cplx v = a.mat()(x, y);
        if (v == cplx(0.0, 0.0)) continue;
        for (int in = 0; in < bl.inner; ++in)
          out(o * stride + x * bl.inner + in, o * stride + y * bl.inner + in) = v;
      }
  return HermitianOperator::hermitized(std::move(out));
}

HermitianOperator kron_sum(const std::vector<HermitianOperator>& terms) {
  if (terms.empty()) throw InvalidInput("kron_sum: empty operator list");
  std::vector<int> dims;
  dims.reserve(terms.size());
  for (const HermitianOperator& t : terms) dims.push_back(t.dim());
  const ProductSpace space(dims);
  HermitianOperator out = HermitianOperator::zero(space.total_dim);
  for (std::size_t i = 0; i < terms.size(); ++i)
    out += embed(terms[i], space, static_cast<int>(i));
  return out;
}

HermitianOperator permute_conjugate(const HermitianOperator& a, const ProductSpace& space,
                                    int axis) {
  check_axis(space, axis, "permute_conjugate");
  if (a.dim() != space.total_dim) {
    throw InvalidInput("permute_conjugate: operator dim " + std::to_string(a.dim()) +
                       " does not match space total_dim " + std::to_string(space.total_dim));
  }
  const int n = space.factors();
  const int d = space.dims[0];
  for (int j = 1; j < n; ++j) {
    if (space.dims[j] != d)
      throw InvalidInput("permute_conjugate: factors must have equal dimension");
  }
  // map[x]: multi-index (x_0..x_{N-1}) -> (x_0..x_{axis-1}, x_{axis+1}.., x_axis)
  const int total = space.total_dim;
  std::vector<int> map(total);
  std::vector<int> multi(n);
  for (int x = 0; x < total; ++x) {
    int rem = x;
    for (int j = n - 1; j >= 0; --j) {
      multi[j] = rem % d;
      rem /= d;
    }
    int y = 0;
    for (int j = 0; j < n; ++j) {
      if (j == axis) continue;
      y = y * d + multi[j];
    }
    y = y * d + multi[axis];
    map[x] = y;
  }
  CMatrix out(total, total);
  for (int x = 0; x < total; ++x)
    for (int y = 0; y < total; ++y) out(map[x], map[y]) = a.mat()(x, y);
  return HermitianOperator::hermitized(std::move(out));
}

}  // namespace eot
