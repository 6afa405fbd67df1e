#include "polar/kernels.hpp"

#include <atomic>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace polar {

namespace {
std::atomic<Exec> g_exec{Exec::Parallel};
}

Exec default_exec() { return g_exec.load(); }
void set_default_exec(Exec e) { g_exec.store(e); }

namespace kernels {

namespace {

// Runs body(i) for i in [0, n); parallel path distributes the independent
// iterations. body must write disjoint outputs per index.
template <typename F>
void for_each_index(long n, Exec exec, F&& body) {
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < n; ++i) body(i);
  } else {
    for (long i = 0; i < n; ++i) body(i);
  }
}

// Deterministic max-reduction: per-index values are stored, then folded in
// index order (max is exact, so the fold order is irrelevant; storing keeps
// the pattern uniform with other reductions).
template <typename F>
double max_over_indices(long n, Exec exec, F&& value_at) {
  std::vector<double> vals(static_cast<size_t>(std::max(0L, n)), 0.0);
  for_each_index(n, exec, [&](long i) { vals[static_cast<size_t>(i)] = value_at(i); });
  double m = 0.0;
  for (double v : vals) m = std::max(m, v);
  return m;
}

}  // namespace

void conjugate_all(const Mat& g_inv, const Mat& g, const std::vector<Mat>& x,
                   std::vector<Mat>& out, Exec exec) {
  out.resize(x.size());
  for_each_index(static_cast<long>(x.size()), exec,
                 [&](long i) { out[static_cast<size_t>(i)] = g_inv * x[static_cast<size_t>(i)] * g; });
}

Mat coeffs(const Mat& basis, const Mat& vecs, Exec exec) {
  Mat c(basis.cols(), vecs.cols());
  for_each_index(vecs.cols(), exec,
                 [&](long j) { c.col(j) = basis.transpose() * vecs.col(j); });
  return c;
}

Mat residual_after_projection(const Mat& basis, const Mat& vecs, Exec exec) {
  Mat r(vecs.rows(), vecs.cols());
  for_each_index(vecs.cols(), exec, [&](long j) {
    if (basis.cols() == 0) {
      r.col(j) = vecs.col(j);
    } else {
      Vec c = basis.transpose() * vecs.col(j);
      r.col(j) = vecs.col(j) - basis * c;
    }
  });
  return r;
}

double lie_triple_residual(const Mat& nu_basis, int n, Exec exec) {
  const long d = nu_basis.cols();
  if (d < 2) return 0.0;
  std::vector<Mat> mats(static_cast<size_t>(d));
  for (long i = 0; i < d; ++i) mats[static_cast<size_t>(i)] = unvec_rowmajor(nu_basis.col(i), n);
  // enumerate pairs i<j, inner loop over k
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) pairs.emplace_back(i, j);
  return max_over_indices(static_cast<long>(pairs.size()), exec, [&](long idx) {
    auto [i, j] = pairs[static_cast<size_t>(idx)];
    const Mat bij = bracket(mats[i], mats[j]);
    double worst = 0.0;
    for (long k = 0; k < d; ++k) {
      const Mat t = bracket(bij, mats[static_cast<size_t>(k)]);
      const Vec tv = vec_rowmajor(t);
      const double norm = tv.norm();
      if (norm < 1e-12) continue;
      const Vec res = tv - nu_basis * (nu_basis.transpose() * tv);
      worst = std::max(worst, res.norm() / norm);
    }
    return worst;
  });
}

double max_pair_bracket_norm(const Mat& basis, int n, Exec exec) {
  const long d = basis.cols();
  if (d < 2) return 0.0;
  std::vector<Mat> mats(static_cast<size_t>(d));
  for (long i = 0; i < d; ++i) mats[static_cast<size_t>(i)] = unvec_rowmajor(basis.col(i), n);
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) pairs.emplace_back(i, j);
  return max_over_indices(static_cast<long>(pairs.size()), exec, [&](long idx) {
    auto [i, j] = pairs[static_cast<size_t>(idx)];
    return bracket(mats[i], mats[j]).norm();
  });
}

Mat bracket_pairs(const Mat& basis, int n, Exec exec) {
  const long d = basis.cols();
  std::vector<Mat> mats(static_cast<size_t>(d));
  for (long i = 0; i < d; ++i) mats[static_cast<size_t>(i)] = unvec_rowmajor(basis.col(i), n);
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) pairs.emplace_back(i, j);
  Mat out(basis.rows(), static_cast<long>(pairs.size()));
  for_each_index(static_cast<long>(pairs.size()), exec, [&](long idx) {
    auto [i, j] = pairs[static_cast<size_t>(idx)];
    out.col(idx) = vec_rowmajor(bracket(mats[i], mats[j]));
  });
  return out;
}

double max_abs_cross_inner(const Mat& a, const Mat& b, Exec exec) {
  if (a.cols() == 0 || b.cols() == 0) return 0.0;
  return max_over_indices(a.cols(), exec, [&](long i) {
    return (b.transpose() * a.col(i)).cwiseAbs().maxCoeff();
  });
}

double closure_residual(const Mat& basis, int n, int max_pairs, uint64_t seed,
                        Exec exec) {
  const long d = basis.cols();
  if (d < 2) return 0.0;
  std::vector<std::pair<int, int>> pairs;
  const long total = d * (d - 1) / 2;
  if (max_pairs <= 0 || total <= max_pairs) {
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) pairs.emplace_back(i, j);
  } else {
    Rng rng(mix_seed(seed, 0x9cc3));
    for (int s = 0; s < max_pairs; ++s) {
      int i = static_cast<int>(rng.uniform() * d);
      int j = static_cast<int>(rng.uniform() * d);
      if (i == j) j = (j + 1) % static_cast<int>(d);
      pairs.emplace_back(std::min(i, j), std::max(i, j));
    }
  }
  std::vector<Mat> mats(static_cast<size_t>(d));
  for (long i = 0; i < d; ++i) mats[static_cast<size_t>(i)] = unvec_rowmajor(basis.col(i), n);
  return max_over_indices(static_cast<long>(pairs.size()), exec, [&](long idx) {
    auto [i, j] = pairs[static_cast<size_t>(idx)];
    const Vec bv = vec_rowmajor(bracket(mats[i], mats[j]));
    const double norm = bv.norm();
    if (norm < 1e-12) return 0.0;
    const Vec res = bv - basis * (basis.transpose() * bv);
    return res.norm() / norm;
  });
}

Mat ad_action_matrix(const Mat& z, const Mat& basis, int n, Exec exec) {
  Mat out(basis.rows(), basis.cols());
  for_each_index(basis.cols(), exec, [&](long j) {
    out.col(j) = vec_rowmajor(bracket(z, unvec_rowmajor(basis.col(j), n)));
  });
  return out;
}

Mat sym_basis(int d) {
  const long m = static_cast<long>(d) * (d + 1) / 2;
  Mat b = Mat::Zero(static_cast<long>(d) * d, m);
  long col = 0;
  const double s = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      if (i == j) {
        b(static_cast<long>(i) * d + j, col) = 1.0;
      } else {
        b(static_cast<long>(i) * d + j, col) = s;
        b(static_cast<long>(j) * d + i, col) = s;
      }
      ++col;
    }
  return b;
}

Mat antisym_basis(int d) {
  const long m = static_cast<long>(d) * (d - 1) / 2;
  Mat b = Mat::Zero(static_cast<long>(d) * d, m);
  long col = 0;
  const double s = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      b(static_cast<long>(i) * d + j, col) = s;
      b(static_cast<long>(j) * d + i, col) = -s;
      ++col;
    }
  return b;
}

Mat commutant_operator(const std::vector<Mat>& rho, bool symmetric_part,
                       Exec exec) {
  if (rho.empty()) throw Error("commutant_operator: empty representation");
  const int d = static_cast<int>(rho.front().rows());
  const Mat part = symmetric_part ? sym_basis(d) : antisym_basis(d);
  // A(T) = sum_X [X, [X, T]] with a sign making it PSD for skew X:
  // <A T, T> = sum ||[X, T]||^2.
  Mat op(part.cols(), part.cols());
  for_each_index(part.cols(), exec, [&](long j) {
    const Mat t = unvec_rowmajor(part.col(j), d);
    Mat acc = Mat::Zero(d, d);
    for (const Mat& x : rho) {
      const Mat c = bracket(x, t);
      acc -= bracket(x, c);  // -ad_X^2 since ad_X is skew-adjoint
    }
    op.col(j) = part.transpose() * vec_rowmajor(acc);
  });
  return op;
}

Mat intertwiner_operator(const std::vector<Mat>& rho_a,
                         const std::vector<Mat>& rho_b, Exec exec) {
  if (rho_a.size() != rho_b.size())
    throw DimensionMismatch("intertwiner_operator: representation size mismatch");
  const long da = rho_a.empty() ? 0 : rho_a.front().rows();
  const long db = rho_b.empty() ? 0 : rho_b.front().rows();
  const long m = db * da;  // T: carrier(A) -> carrier(B), db x da entries
  Mat op = Mat::Zero(m, m);
  // Column for unit matrix E_{rs}: L_X(E) = B_X E - E A_X; accumulate
  // sum_X L_X^T L_X applied to each basis element.
  for_each_index(m, exec, [&](long col) {
    const long r = col / da;
    const long s = col % da;
    Mat acc = Mat::Zero(db, da);
    for (size_t k = 0; k < rho_a.size(); ++k) {
      const Mat& ax = rho_a[k];
      const Mat& bx = rho_b[k];
      // L_X(E_{rs}) = bx.col-part - row-part; compute explicitly.
      Mat e = Mat::Zero(db, da);
      e(r, s) = 1.0;
      const Mat l = bx * e - e * ax;
      // apply L_X^T: for skew ax, bx, L_X^T(M) = -(bx*M - M*ax)
      acc -= bx * l - l * ax;
    }
    for (long rr = 0; rr < db; ++rr)
      for (long ss = 0; ss < da; ++ss) op(rr * da + ss, col) = acc(rr, ss);
  });
  return op;
}

}  // namespace kernels
}  // namespace polar
