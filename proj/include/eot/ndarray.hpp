#pragma once

#include <vector>

namespace eot {

// Dense row-major N-way real array.
struct NdArray {
  NdArray() = default;
  explicit NdArray(std::vector<int> dims_in);

  std::vector<int> dims;
  std::vector<double> v;

  int size() const { return static_cast<int>(v.size()); }
  int naxes() const { return static_cast<int>(dims.size()); }
  double& operator[](int i) { return v[i]; }
  const double& operator[](int i) const { return v[i]; }
};

// Entry count at which the ndarray kernels switch to their OpenMP variants.
inline constexpr int kNdParallelSize = 1 << 15;

// out[m] = sum of t over the slice {x_axis = m}.
std::vector<double> axis_sum(const NdArray& t, int axis);

// out[m] = log sum exp of t over the slice {x_axis = m} (max-shifted).
std::vector<double> axis_logsumexp(const NdArray& t, int axis);

// log sum exp over all entries.
double total_logsumexp(const NdArray& t);

// T[x] = -cost[x]/eps + sum_i add[i][x_i].  `add` must have one vector per
// axis (use zeros to skip an axis).
NdArray log_plan_field(const NdArray& cost, double eps,
                       const std::vector<std::vector<double>>& add);

namespace kernels {
std::vector<double> axis_sum_serial(const NdArray& t, int axis);
std::vector<double> axis_sum_parallel(const NdArray& t, int axis);
std::vector<double> axis_logsumexp_serial(const NdArray& t, int axis);
std::vector<double> axis_logsumexp_parallel(const NdArray& t, int axis);
NdArray log_plan_field_serial(const NdArray& cost, double eps,
                              const std::vector<std::vector<double>>& add);
NdArray log_plan_field_parallel(const NdArray& cost, double eps,
                                const std::vector<std::vector<double>>& add);
}  // namespace kernels

}  // namespace eot
