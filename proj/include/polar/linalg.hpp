// Tolerance-aware real linear algebra over flattened matrix spaces:
// orthonormal bases, projections, intersections, numeric rank.
#pragma once

#include "polar/base.hpp"

namespace polar::linalg {

// A linear subspace held as an orthonormal basis (columns). Immutable after
// construction; all operations are pure.
struct Subspace {
  long ambient_dim = 0;
  Mat basis;  // ambient_dim x dim, orthonormal columns
  double tol = kDefaultTol;

  long dim() const { return basis.cols(); }

  static Subspace zero(long ambient, double tol = kDefaultTol) {
    Subspace s;
    s.ambient_dim = ambient;
    s.basis = Mat::Zero(ambient, 0);
    s.tol = tol;
    return s;
  }
};

// Gram-Schmidt with re-orthogonalization. Inputs whose residual after
// projection onto the previously accepted basis falls below
// tol * (largest input norm) are dropped.
Subspace orthonormalize(const Mat& vectors, double tol = kDefaultTol);
Subspace orthonormalize(const std::vector<Vec>& vectors, long ambient,
                        double tol = kDefaultTol);

Vec project(const Vec& v, const Subspace& s);

// ||v - P_S v|| / ||v||; zero vector has residual 0.
double membership_residual(const Vec& v, const Subspace& s);

// Largest membership residual over the columns of a's basis against b.
// Equals the sine of the largest principal angle when dims agree.
double subspace_gap(const Subspace& a, const Subspace& b);

Subspace intersect(const Subspace& a, const Subspace& b);

// big ∩ sub^perp (orthogonal complement of sub taken inside big).
Subspace complement_within(const Subspace& big, const Subspace& sub);

// Span of the union of the two bases.
Subspace span_sum(const Subspace& a, const Subspace& b);

// Count of singular values > tol * (largest singular value).
int numeric_rank(const Mat& vectors, double tol = kDefaultTol);

// Orthonormal basis of the (right) null space at relative threshold tol.
Mat null_space(const Mat& m, double tol = kDefaultTol);

}  // namespace polar::linalg
