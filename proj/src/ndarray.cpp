#include "eot/ndarray.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "eot/errors.hpp"

namespace eot {
namespace {

struct AxisBlocks {
  int dim, inner, outer, stride;
};

AxisBlocks axis_blocks(const std::vector<int>& dims, int axis) {
  if (axis < 0 || axis >= static_cast<int>(dims.size()))
    throw InvalidInput("ndarray: axis " + std::to_string(axis) + " out of range");
  AxisBlocks b{dims[axis], 1, 1, 0};
  for (std::size_t j = axis + 1; j < dims.size(); ++j) b.inner *= dims[j];
  for (int j = 0; j < axis; ++j) b.outer *= dims[j];
  b.stride = b.dim * b.inner;
  return b;
}

double slice_sum(const NdArray& t, const AxisBlocks& b, int m) {
  double s = 0.0;
  for (int o = 0; o < b.outer; ++o) {
    const double* base = t.v.data() + static_cast<std::size_t>(o) * b.stride + m * b.inner;
    for (int in = 0; in < b.inner; ++in) s += base[in];
  }
  return s;
}

double slice_logsumexp(const NdArray& t, const AxisBlocks& b, int m) {
  double mx = -std::numeric_limits<double>::infinity();
  for (int o = 0; o < b.outer; ++o) {
    const double* base = t.v.data() + static_cast<std::size_t>(o) * b.stride + m * b.inner;
    for (int in = 0; in < b.inner; ++in) mx = std::max(mx, base[in]);
  }
  if (!std::isfinite(mx)) return mx;  // all -inf (empty mass) stays -inf
  double s = 0.0;
  for (int o = 0; o < b.outer; ++o) {
    const double* base = t.v.data() + static_cast<std::size_t>(o) * b.stride + m * b.inner;
    for (int in = 0; in < b.inner; ++in) s += std::exp(base[in] - mx);
  }
  return mx + std::log(s);
}

void check_field_args(const NdArray& cost, double eps,
                      const std::vector<std::vector<double>>& add) {
  if (eps <= 0.0) throw InvalidInput("log_plan_field: eps must be positive");
  if (add.size() != cost.dims.size())
    throw InvalidInput("log_plan_field: need one add vector per axis");
  for (std::size_t i = 0; i < add.size(); ++i) {
    if (static_cast<int>(add[i].size()) != cost.dims[i])
      throw InvalidInput("log_plan_field: add[" + std::to_string(i) + "] has length " +
                         std::to_string(add[i].size()) + ", expected " +
                         std::to_string(cost.dims[i]));
  }
}

inline double field_entry(const NdArray& cost, double inv_eps,
                          const std::vector<std::vector<double>>& add, int flat) {
  double s = -cost.v[flat] * inv_eps;
  int rem = flat;
  for (int j = static_cast<int>(cost.dims.size()) - 1; j >= 0; --j) {
    s += add[j][rem % cost.dims[j]];
    rem /= cost.dims[j];
  }
  return s;
}

}  // namespace

NdArray::NdArray(std::vector<int> dims_in) : dims(std::move(dims_in)) {
  if (dims.empty()) throw InvalidInput("NdArray: needs at least one axis");
  long long total = 1;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (dims[i] < 1)
      throw InvalidInput("NdArray: dims[" + std::to_string(i) + "] must be positive");
    total *= dims[i];
    if (total > (1 << 26)) throw InvalidInput("NdArray: size exceeds the 2^26 safety cap");
  }
  v.assign(static_cast<std::size_t>(total), 0.0);
}

namespace kernels {

std::vector<double> axis_sum_serial(const NdArray& t, int axis) {
  const AxisBlocks b = axis_blocks(t.dims, axis);
  std::vector<double> out(b.dim);
  for (int m = 0; m < b.dim; ++m) out[m] = slice_sum(t, b, m);
  return out;
}

std::vector<double> axis_sum_parallel(const NdArray& t, int axis) {
  const AxisBlocks b = axis_blocks(t.dims, axis);
  std::vector<double> out(b.dim);
#pragma omp parallel for schedule(static)
  for (int m = 0; m < b.dim; ++m) out[m] = slice_sum(t, b, m);
  return out;
}

std::vector<double> axis_logsumexp_serial(const NdArray& t, int axis) {
  const AxisBlocks b = axis_blocks(t.dims, axis);
  std::vector<double> out(b.dim);
  for (int m = 0; m < b.dim; ++m) out[m] = slice_logsumexp(t, b, m);
  return out;
}

std::vector<double> axis_logsumexp_parallel(const NdArray& t, int axis) {
  const AxisBlocks b = axis_blocks(t.dims, axis);
  std::vector<double> out(b.dim);
#pragma omp parallel for schedule(static)
  for (int m = 0; m < b.dim; ++m) out[m] = slice_logsumexp(t, b, m);
  return out;
}

NdArray log_plan_field_serial(const NdArray& cost, double eps,
                              const std::vector<std::vector<double>>& add) {
  check_field_args(cost, eps, add);
  NdArray out(cost.dims);
  const double inv_eps = 1.0 / eps;
  for (int x = 0; x < out.size(); ++x) out.v[x] = field_entry(cost, inv_eps, add, x);
  return out;
}

NdArray log_plan_field_parallel(const NdArray& cost, double eps,
                                const std::vector<std::vector<double>>& add) {
  check_field_args(cost, eps, add);
  NdArray out(cost.dims);
  const double inv_eps = 1.0 / eps;
#pragma omp parallel for schedule(static)
  for (int x = 0; x < out.size(); ++x) out.v[x] = field_entry(cost, inv_eps, add, x);
  return out;
}

}  // namespace kernels

std::vector<double> axis_sum(const NdArray& t, int axis) {
  return t.size() >= kNdParallelSize ? kernels::axis_sum_parallel(t, axis)
                                     : kernels::axis_sum_serial(t, axis);
}

std::vector<double> axis_logsumexp(const NdArray& t, int axis) {
  return t.size() >= kNdParallelSize ? kernels::axis_logsumexp_parallel(t, axis)
                                     : kernels::axis_logsumexp_serial(t, axis);
}

double total_logsumexp(const NdArray& t) {
  double mx = -std::numeric_limits<double>::infinity();
  for (double x : t.v) mx = std::max(mx, x);
  if (!std::isfinite(mx)) return mx;
  double s = 0.0;
  for (double x : t.v) s += std::exp(x - mx);
  return mx + std::log(s);
}

NdArray log_plan_field(const NdArray& cost, double eps,
                       const std::vector<std::vector<double>>& add) {
  return cost.size() >= kNdParallelSize ? kernels::log_plan_field_parallel(cost, eps, add)
                                        : kernels::log_plan_field_serial(cost, eps, add);
}

}  // namespace eot
