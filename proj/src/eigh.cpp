#include "eot/eigh.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "eot/errors.hpp"

namespace eot {
namespace {

constexpr int kMaxSweeps = 60;

// One plane rotation, annihilating W(p,q).  Returns false when the pivot is
// already (denormal-level) zero.  G acts on the (p,q) plane:
//   G(p,p) = c*w,  G(p,q) = -s*w,  G(q,p) = s,  G(q,q) = c,   w = b/|b|,
// and the update is W <- G^dagger W G, V <- V G.
struct Rotation {
  double c, s, ab;
  cplx w;
  double app, aqq;  // pre-rotation diagonal entries
};

bool plan_rotation(const CMatrix& w, int p, int q, Rotation* rot) {
  const cplx b = w(p, q);
  const double ab = std::abs(b);
  if (ab < 1e-300) return false;
  const double a = w(p, p).real();
  const double d = w(q, q).real();
  const double theta = (a - d) / (2.0 * ab);
  double t;
  if (std::abs(theta) > 1e8) {
    t = 1.0 / (2.0 * theta);  // asymptotic root; avoids overflow in theta^2
  } else {
    const double sg = theta >= 0.0 ? 1.0 : -1.0;
    t = sg / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
  }
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  rot->c = c;
  rot->s = t * c;
  rot->ab = ab;
  rot->w = b / ab;
  rot->app = a;
  rot->aqq = d;
  return true;
}

// Post-rotation 2x2 block, exact from the annihilation equations.
void fix_block(CMatrix& w, int p, int q, const Rotation& r) {
  const double cs = r.c * r.s;
  w(p, p) = r.app * r.c * r.c + 2.0 * r.ab * cs + r.aqq * r.s * r.s;
  w(q, q) = r.app * r.s * r.s - 2.0 * r.ab * cs + r.aqq * r.c * r.c;
  w(p, q) = 0.0;
  w(q, p) = 0.0;
}

double offdiag_norm(const CMatrix& w) {
  double s = 0.0;
  for (int p = 0; p < w.rows(); ++p)
    for (int q = p + 1; q < w.cols(); ++q) s += std::norm(w(p, q)) + std::norm(w(q, p));
  return std::sqrt(s);
}

CMatrix hermitized_copy(const CMatrix& a) {
  CMatrix w(a.rows(), a.cols());
  for (int r = 0; r < a.rows(); ++r) {
    w(r, r) = a(r, r).real();
    for (int c = r + 1; c < a.cols(); ++c) {
      const cplx v = 0.5 * (a(r, c) + std::conj(a(c, r)));
      w(r, c) = v;
      w(c, r) = std::conj(v);
    }
  }
  return w;
}

EighResult collect_sorted(const CMatrix& w, CMatrix&& v, bool want_vectors) {
  const int n = w.rows();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return w(i, i).real() < w(j, j).real(); });
  EighResult res;
  res.values.resize(n);
  for (int i = 0; i < n; ++i) res.values[i] = w(order[i], order[i]).real();
  if (want_vectors) {
    res.vectors = CMatrix(n, n);
    for (int c = 0; c < n; ++c)
      for (int r = 0; r < n; ++r) res.vectors(r, c) = v(r, order[c]);
  }
  return res;
}

}  // namespace

namespace kernels {

EighResult eigh_serial(const CMatrix& a, bool want_vectors) {
  const int n = a.rows();
  CMatrix w = hermitized_copy(a);
  CMatrix v = want_vectors ? CMatrix::identity(n) : CMatrix();
  if (n <= 1) return collect_sorted(w, std::move(v), want_vectors);

  const double total = frob_norm(w);
  const double tol = 1e-15 * total;
  double off = offdiag_norm(w);
  int sweep = 0;
  for (; sweep < kMaxSweeps && off > tol; ++sweep) {
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        Rotation r;
        if (!plan_rotation(w, p, q, &r)) {
          w(p, q) = 0.0;
          w(q, p) = 0.0;
          continue;
        }
        const cplx cw = r.c * r.w;
        const cplx msw = -r.s * r.w;
        for (int k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const cplx t1 = w(k, p), t2 = w(k, q);
          w(k, p) = cw * t1 + r.s * t2;
          w(k, q) = msw * t1 + r.c * t2;
          w(p, k) = std::conj(w(k, p));
          w(q, k) = std::conj(w(k, q));
        }
        fix_block(w, p, q, r);
        if (want_vectors) {
          for (int k = 0; k < n; ++k) {
            const cplx t1 = v(k, p), t2 = v(k, q);
            v(k, p) = cw * t1 + r.s * t2;
            v(k, q) = msw * t1 + r.c * t2;
          }
        }
      }
    }
    off = offdiag_norm(w);
  }
  if (off > tol * 100.0 && off > 1e-13 * total) {
    throw NumericalFailure(
        "eigh: Jacobi sweeps exhausted at off-diagonal norm " + std::to_string(off),
        off);
  }
  return collect_sorted(w, std::move(v), want_vectors);
}

EighResult eigh_parallel(const CMatrix& a, bool want_vectors) {
  const int n = a.rows();
  CMatrix w = hermitized_copy(a);
  CMatrix v = want_vectors ? CMatrix::identity(n) : CMatrix();
  if (n <= 1) return collect_sorted(w, std::move(v), want_vectors);

  // Round-robin tournament schedule: m-1 rounds of m/2 disjoint pairs cover
  // every (p,q) once.  Index n is the bye slot when n is odd.
  const int m = (n % 2 == 0) ? n : n + 1;
  std::vector<int> players(m);
  std::iota(players.begin(), players.end(), 0);

  struct PlannedPair {
    int p, q;
    Rotation rot;
  };

  const double total = frob_norm(w);
  const double tol = 1e-15 * total;
  double off = offdiag_norm(w);
  int sweep = 0;
  for (; sweep < kMaxSweeps && off > tol; ++sweep) {
    for (int round = 0; round < m - 1; ++round) {
      // Snapshot the rotation angles before touching the matrix; every pair
      // then sees identical inputs regardless of thread interleaving.
      std::vector<PlannedPair> live;
      live.reserve(m / 2);
      for (int i = 0; i < m / 2; ++i) {
        const int x = players[i], y = players[m - 1 - i];
        if (x >= n || y >= n) continue;  // bye
        PlannedPair pp;
        pp.p = std::min(x, y);
        pp.q = std::max(x, y);
        if (plan_rotation(w, pp.p, pp.q, &pp.rot)) {
          live.push_back(pp);
        } else {
          w(pp.p, pp.q) = 0.0;
          w(pp.q, pp.p) = 0.0;
        }
      }
      const int npairs = static_cast<int>(live.size());
      // Phase A: right-multiply by the (commuting) rotations: columns p,q.
#pragma omp parallel for schedule(static)
      for (int i = 0; i < npairs; ++i) {
        const PlannedPair& pp = live[i];
        const cplx cw = pp.rot.c * pp.rot.w;
        const cplx msw = -pp.rot.s * pp.rot.w;
        for (int k = 0; k < n; ++k) {
          const cplx t1 = w(k, pp.p), t2 = w(k, pp.q);
          w(k, pp.p) = cw * t1 + pp.rot.s * t2;
          w(k, pp.q) = msw * t1 + pp.rot.c * t2;
        }
      }
      // Phase B: left-multiply by the adjoints: rows p,q.
#pragma omp parallel for schedule(static)
      for (int i = 0; i < npairs; ++i) {
        const PlannedPair& pp = live[i];
        const cplx cwbar = pp.rot.c * std::conj(pp.rot.w);
        const cplx mswbar = -pp.rot.s * std::conj(pp.rot.w);
        for (int k = 0; k < n; ++k) {
          const cplx t1 = w(pp.p, k), t2 = w(pp.q, k);
          w(pp.p, k) = cwbar * t1 + pp.rot.s * t2;
          w(pp.q, k) = mswbar * t1 + pp.rot.c * t2;
        }
      }
      // Phase C: each pivot block only feels its own rotation; write the
      // annihilated form exactly.
      for (const PlannedPair& pp : live) fix_block(w, pp.p, pp.q, pp.rot);
      if (want_vectors) {
#pragma omp parallel for schedule(static)
        for (int i = 0; i < npairs; ++i) {
          const PlannedPair& pp = live[i];
          const cplx cw = pp.rot.c * pp.rot.w;
          const cplx msw = -pp.rot.s * pp.rot.w;
          for (int k = 0; k < n; ++k) {
            const cplx t1 = v(k, pp.p), t2 = v(k, pp.q);
            v(k, pp.p) = cw * t1 + pp.rot.s * t2;
            v(k, pp.q) = msw * t1 + pp.rot.c * t2;
          }
        }
      }
      // Advance the tournament: seat 0 fixed, the rest rotate one seat.
      const int last = players[m - 1];
      for (int i = m - 1; i >= 2; --i) players[i] = players[i - 1];
      players[1] = last;
    }
    // Two-phase updates drift off exact hermiticity at roundoff level;
    // re-symmetrise once per sweep.
    w = hermitized_copy(w);
    off = offdiag_norm(w);
  }
  if (off > tol * 100.0 && off > 1e-13 * total) {
    throw NumericalFailure(
        "eigh: Jacobi sweeps exhausted at off-diagonal norm " + std::to_string(off),
        off);
  }
  return collect_sorted(w, std::move(v), want_vectors);
}

}  // namespace kernels

namespace {

void check_eigh_input(const CMatrix& a) {
  if (a.rows() != a.cols())
    throw InvalidInput("eigh: matrix is " + std::to_string(a.rows()) + "x" +
                       std::to_string(a.cols()) + ", not square");
  const double defect = herm_defect(a);
  if (defect > 1e-12 * std::max(a.max_abs(), 1e-300)) {
    throw InvalidInput("eigh: matrix is not Hermitian (defect " +
                       std::to_string(defect) + ")");
  }
}

}  // namespace

EighResult eigh(const CMatrix& a) {
  check_eigh_input(a);
  if (a.rows() >= kEighParallelDim) return kernels::eigh_parallel(a, true);
  return kernels::eigh_serial(a, true);
}

std::vector<double> eigh_values(const CMatrix& a) {
  check_eigh_input(a);
  if (a.rows() >= kEighParallelDim)
    return kernels::eigh_parallel(a, false).values;
  return kernels::eigh_serial(a, false).values;
}

}  // namespace eot
