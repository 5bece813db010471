// Times each serial/parallel kernel pair on one synthetic input and prints
// the per-call milliseconds, the speedup, and the discrepancy between the
// two variants' results.  The library's dispatch constants (kMatmulParallelDim
// and friends) were picked from runs of this tool.
#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "eot/cmatrix.hpp"
#include "eot/eigh.hpp"
#include "eot/ndarray.hpp"
#include "eot/tensor_ops.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

double now_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

// Best-of-reps wall time in milliseconds.
template <class F>
double time_ms(int reps, F&& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const double t0 = now_seconds();
    f();
    best = std::min(best, (now_seconds() - t0) * 1e3);
  }
  return best;
}

void print_row(const std::string& kernel, const std::string& size, double serial_ms,
               double parallel_ms, double diff) {
  std::printf("%-16s %-12s %10.3f %12.3f %9.2fx %10.2e\n", kernel.c_str(), size.c_str(),
              serial_ms, parallel_ms, serial_ms / parallel_ms, diff);
}

eot::CMatrix random_matrix(int dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  eot::CMatrix m(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) m(r, c) = eot::cplx(u(rng), u(rng));
  return m;
}

eot::CMatrix random_hermitian(int dim, std::mt19937_64& rng) {
  eot::CMatrix m = random_matrix(dim, rng);
  eot::CMatrix h(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) h(r, c) = 0.5 * (m(r, c) + std::conj(m(c, r)));
  return h;
}

double max_abs_diff(const eot::CMatrix& a, const eot::CMatrix& b) {
  eot::CMatrix d = a;
  d -= b;
  return d.max_abs();
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

int main(int argc, char** argv) {
  int dim = 192;    // matmul / eigh matrix dimension
  int factor = 24;  // one-factor dimension of the 3-factor partial-trace input
  int grid = 72;    // axis length of the 3-axis ndarray inputs
  int reps = 5;
  CLI::App app{"serial vs OpenMP kernel timings"};
  app.add_option("--dim", dim, "matrix dimension for matmul and eigh");
  app.add_option("--factor", factor, "factor dimension for the partial trace");
  app.add_option("--grid", grid, "axis length for the ndarray kernels");
  app.add_option("--reps", reps, "repetitions; the best time is reported");
  CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
  std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
  std::printf("built without OpenMP; the parallel kernels run their serial path\n");
#endif
  std::printf("%-16s %-12s %10s %12s %10s %10s\n", "kernel", "size", "serial_ms",
              "parallel_ms", "speedup", "max_diff");

  std::mt19937_64 rng(20240817);

  {
    const eot::CMatrix a = random_matrix(dim, rng);
    const eot::CMatrix b = random_matrix(dim, rng);
    eot::CMatrix rs(1, 1), rp(1, 1);
    const double ts = time_ms(reps, [&] { rs = eot::kernels::matmul_serial(a, b); });
    const double tp = time_ms(reps, [&] { rp = eot::kernels::matmul_parallel(a, b); });
    print_row("matmul", std::to_string(dim) + "^2", ts, tp, max_abs_diff(rs, rp));
  }

  {
    const eot::CMatrix h = random_hermitian(dim, rng);
    eot::EighResult es, ep;
    const double ts = time_ms(reps, [&] { es = eot::kernels::eigh_serial(h); });
    const double tp = time_ms(reps, [&] { ep = eot::kernels::eigh_parallel(h); });
    // The two pivot orders reach different (equally valid) eigenbases, so
    // compare the sorted spectra, not the vectors.
    print_row("eigh", std::to_string(dim) + "^2", ts, tp,
              max_abs_diff(es.values, ep.values));
  }

  {
    const std::vector<int> dims = {factor, factor, factor};
    const int total = factor * factor * factor;
    const eot::CMatrix g = random_hermitian(total, rng);
    eot::CMatrix rs(1, 1), rp(1, 1);
    const double ts =
        time_ms(reps, [&] { rs = eot::kernels::partial_trace_serial(g, dims, 1); });
    const double tp =
        time_ms(reps, [&] { rp = eot::kernels::partial_trace_parallel(g, dims, 1); });
    print_row("partial_trace", std::to_string(total) + "^2", ts, tp,
              max_abs_diff(rs, rp));
  }

  {
    eot::NdArray t({grid, grid, grid});
    std::uniform_real_distribution<double> u(-4.0, 4.0);
    for (double& x : t.v) x = u(rng);
    const std::string size =
        std::to_string(grid) + "^3";

    std::vector<double> vs, vp;
    double ts = time_ms(reps, [&] { vs = eot::kernels::axis_sum_serial(t, 1); });
    double tp = time_ms(reps, [&] { vp = eot::kernels::axis_sum_parallel(t, 1); });
    print_row("axis_sum", size, ts, tp, max_abs_diff(vs, vp));

    ts = time_ms(reps, [&] { vs = eot::kernels::axis_logsumexp_serial(t, 1); });
    tp = time_ms(reps, [&] { vp = eot::kernels::axis_logsumexp_parallel(t, 1); });
    print_row("axis_logsumexp", size, ts, tp, max_abs_diff(vs, vp));

    const std::vector<std::vector<double>> add(3, std::vector<double>(grid, 0.25));
    eot::NdArray fs, fp;
    ts = time_ms(reps, [&] { fs = eot::kernels::log_plan_field_serial(t, 0.5, add); });
    tp = time_ms(reps, [&] { fp = eot::kernels::log_plan_field_parallel(t, 0.5, add); });
    print_row("log_plan_field", size, ts, tp, max_abs_diff(fs.v, fp.v));
  }

  return 0;
}
