#include "polar/linalg.hpp"

#include <Eigen/SVD>

namespace polar::linalg {

Subspace orthonormalize(const Mat& vectors, double tol) {
  if (tol <= 0) throw Error("orthonormalize: tol must be positive");
  Subspace out;
  out.ambient_dim = vectors.rows();
  out.tol = tol;
  if (vectors.cols() == 0) {
    out.basis = Mat::Zero(vectors.rows(), 0);
    return out;
  }
  double max_norm = 0.0;
  for (long j = 0; j < vectors.cols(); ++j)
    max_norm = std::max(max_norm, vectors.col(j).norm());
  if (max_norm == 0.0) {
    out.basis = Mat::Zero(vectors.rows(), 0);
    return out;
  }
  const double cut = tol * max_norm;
  Mat basis(vectors.rows(), vectors.cols());
  long accepted = 0;
  for (long j = 0; j < vectors.cols(); ++j) {
    Vec r = vectors.col(j);
    for (int pass = 0; pass < 2; ++pass) {
      if (accepted > 0) {
        const auto b = basis.leftCols(accepted);
        r -= b * (b.transpose() * r);
      }
    }
    const double nrm = r.norm();
    if (nrm >= cut) basis.col(accepted++) = r / nrm;
  }
  out.basis = basis.leftCols(accepted);
  return out;
}

Subspace orthonormalize(const std::vector<Vec>& vectors, long ambient,
                        double tol) {
  Mat m(ambient, static_cast<long>(vectors.size()));
  for (size_t j = 0; j < vectors.size(); ++j) {
    if (vectors[j].size() != ambient)
      throw DimensionMismatch("orthonormalize: mixed vector lengths");
    m.col(static_cast<long>(j)) = vectors[j];
  }
  return orthonormalize(m, tol);
}

Vec project(const Vec& v, const Subspace& s) {
  if (v.size() != s.ambient_dim)
    throw DimensionMismatch("project: ambient dimension mismatch");
  if (s.dim() == 0) return Vec::Zero(v.size());
  return s.basis * (s.basis.transpose() * v);
}

double membership_residual(const Vec& v, const Subspace& s) {
  const double n = v.norm();
  if (n == 0.0) return 0.0;
  return (v - project(v, s)).norm() / n;
}

double subspace_gap(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim != b.ambient_dim)
    throw DimensionMismatch("subspace_gap: ambient mismatch");
  if (a.dim() == 0) return 0.0;
  Mat res = a.basis;
  if (b.dim() > 0) res -= b.basis * (b.basis.transpose() * a.basis);
  Eigen::JacobiSVD<Mat> svd(res);
  return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

Subspace intersect(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim != b.ambient_dim)
    throw DimensionMismatch("intersect: ambient mismatch");
  const double tol = std::max(a.tol, b.tol);
  if (a.dim() == 0 || b.dim() == 0) return Subspace::zero(a.ambient_dim, tol);
  // Directions of b with no component outside a: null directions of
  // (I - P_a) * B in b's coefficient space. Singular values are sines of
  // principal angles, so the threshold is an absolute angle tolerance.
  Mat c = b.basis - a.basis * (a.basis.transpose() * b.basis);
  Eigen::JacobiSVD<Mat> svd(c, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  std::vector<Vec> hits;
  for (long i = 0; i < b.dim(); ++i) {
    const double s = (i < sv.size()) ? sv(i) : 0.0;
    if (s < tol) hits.push_back(b.basis * svd.matrixV().col(i));
  }
  Subspace out = orthonormalize(hits, a.ambient_dim, tol);
  out.tol = tol;
  return out;
}

Subspace complement_within(const Subspace& big, const Subspace& sub) {
  if (big.ambient_dim != sub.ambient_dim)
    throw DimensionMismatch("complement_within: ambient mismatch");
  if (sub.dim() == 0) return big;
  Mat res = big.basis - sub.basis * (sub.basis.transpose() * big.basis);
  Subspace out = orthonormalize(res, std::max(big.tol, 1e-8));
  out.tol = big.tol;
  return out;
}

Subspace span_sum(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim != b.ambient_dim)
    throw DimensionMismatch("span_sum: ambient mismatch");
  Mat joined(a.ambient_dim, a.dim() + b.dim());
  joined << a.basis, b.basis;
  Subspace out = orthonormalize(joined, std::max(a.tol, b.tol));
  return out;
}

int numeric_rank(const Mat& vectors, double tol) {
  if (vectors.cols() == 0) return 0;
  Eigen::BDCSVD<Mat> svd(vectors);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  const double cut = tol * sv(0);
  int r = 0;
  for (long i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) ++r;
  return r;
}

Mat null_space(const Mat& m, double tol) {
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() ? sv(0) : 0.0;
  const double cut = tol * std::max(smax, 1.0);
  std::vector<long> keep;
  for (long i = 0; i < m.cols(); ++i) {
    const double s = (i < sv.size()) ? sv(i) : 0.0;
    if (s <= cut) keep.push_back(i);
  }
  Mat out(m.cols(), static_cast<long>(keep.size()));
  for (size_t j = 0; j < keep.size(); ++j) out.col(static_cast<long>(j)) = svd.matrixV().col(keep[j]);
  return out;
}

}  // namespace polar::linalg
