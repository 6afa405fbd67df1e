#include <doctest.h>

#include "polar/linalg.hpp"

using namespace polar;
using linalg::Subspace;

namespace {

Mat cols(std::initializer_list<std::vector<double>> vs) {
  const long n = static_cast<long>(vs.begin()->size());
  Mat m(n, static_cast<long>(vs.size()));
  long j = 0;
  for (const auto& v : vs) {
    for (long i = 0; i < n; ++i) m(i, j) = v[static_cast<size_t>(i)];
    ++j;
  }
  return m;
}

// Exact rational null-space dimension by fraction-free elimination; the
// independent oracle for intersection dimensions at small size.
int exact_nullity(std::vector<std::vector<long>> rows, int ncols) {
  int rank = 0;
  for (int c = 0; c < ncols && rank < static_cast<int>(rows.size()); ++c) {
    size_t piv = static_cast<size_t>(rank);
    while (piv < rows.size() && rows[piv][static_cast<size_t>(c)] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[static_cast<size_t>(rank)], rows[piv]);
    for (size_t r = static_cast<size_t>(rank) + 1; r < rows.size(); ++r) {
      if (rows[r][static_cast<size_t>(c)] == 0) continue;
      const long a = rows[static_cast<size_t>(rank)][static_cast<size_t>(c)];
      const long b = rows[r][static_cast<size_t>(c)];
      for (int cc = 0; cc < ncols; ++cc)
        rows[r][static_cast<size_t>(cc)] =
            rows[r][static_cast<size_t>(cc)] * a -
            rows[static_cast<size_t>(rank)][static_cast<size_t>(cc)] * b;
    }
    ++rank;
  }
  return ncols - rank;
}

}  // namespace

TEST_CASE("orthonormalize basic examples") {
  auto s = linalg::orthonormalize(cols({{1, 0}, {1, 1}}), 1e-9);
  CHECK(s.dim() == 2);

  s = linalg::orthonormalize(cols({{1, 0}, {2, 0}}), 1e-9);
  CHECK(s.dim() == 1);

  // {v, v + 1e-12 w} with unit v, w orthogonal
  Mat m(2, 2);
  m << 1, 1, 0, 1e-12;
  s = linalg::orthonormalize(m, 1e-9);
  CHECK(s.dim() == 1);

  // empty input: zero subspace
  s = linalg::orthonormalize(Mat::Zero(3, 0), 1e-9);
  CHECK(s.dim() == 0);
  CHECK(s.ambient_dim == 3);
}

TEST_CASE("orthonormalize output is orthonormal to 1e-10") {
  Rng rng(99);
  Mat m(20, 12);
  for (long j = 0; j < m.cols(); ++j) m.col(j) = rng.normal_vector(20);
  const auto s = linalg::orthonormalize(m, 1e-9);
  const Mat gram = s.basis.transpose() * s.basis;
  CHECK((gram - Mat::Identity(s.dim(), s.dim())).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("project examples and idempotence") {
  const auto s = linalg::orthonormalize(cols({{1, 1}}), 1e-9);
  Vec e1(2);
  e1 << 1, 0;
  const Vec p = linalg::project(e1, s);
  CHECK(p[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(p[1] == doctest::Approx(0.5).epsilon(1e-12));
  const Vec pp = linalg::project(p, s);
  CHECK((pp - p).norm() < 1e-10);
  CHECK(p.norm() <= e1.norm());

  // v in span and v orthogonal to span
  Vec inplane(2);
  inplane << 2, 2;
  CHECK((linalg::project(inplane, s) - inplane).norm() < 1e-10);
  Vec ortho(2);
  ortho << 1, -1;
  CHECK(linalg::project(ortho, s).norm() < 1e-12);
}

TEST_CASE("intersect: axis planes and self-intersection") {
  const auto xy = linalg::orthonormalize(cols({{1, 0, 0}, {0, 1, 0}}), 1e-9);
  const auto yz = linalg::orthonormalize(cols({{0, 1, 0}, {0, 0, 1}}), 1e-9);
  const auto is = linalg::intersect(xy, yz);
  REQUIRE(is.dim() == 1);
  CHECK(std::abs(std::abs(is.basis(1, 0)) - 1.0) < 1e-10);

  const auto self = linalg::intersect(xy, xy);
  CHECK(self.dim() == xy.dim());
}

TEST_CASE("intersect: generic 3-dim and 2-dim in R^4 (exact oracle)") {
  // Small integer spans; the oracle solves the stacked system exactly:
  // dim(A ∩ B) = nullity of [A | -B] minus the null directions internal to
  // the generators (here the generators are independent).
  const std::vector<std::vector<long>> a_gens = {
      {1, 0, 0, 0}, {0, 1, 0, 0}, {1, 1, 1, 0}};
  const std::vector<std::vector<long>> b_gens = {{0, 1, 1, 1}, {1, 0, 1, 2}};
  // stacked columns: x in R^5 with A^T-part coefficients
  std::vector<std::vector<long>> rows(4, std::vector<long>(5, 0));
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 3; ++c) rows[static_cast<size_t>(r)][static_cast<size_t>(c)] = a_gens[static_cast<size_t>(c)][static_cast<size_t>(r)];
    for (int c = 0; c < 2; ++c) rows[static_cast<size_t>(r)][static_cast<size_t>(3 + c)] = -b_gens[static_cast<size_t>(c)][static_cast<size_t>(r)];
  }
  const int expected = exact_nullity(rows, 5);  // = dim(A ∩ B) for independent gens
  REQUIRE(expected == 1);

  Mat a(4, 3), b(4, 2);
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 3; ++c) a(r, c) = static_cast<double>(a_gens[static_cast<size_t>(c)][static_cast<size_t>(r)]);
    for (int c = 0; c < 2; ++c) b(r, c) = static_cast<double>(b_gens[static_cast<size_t>(c)][static_cast<size_t>(r)]);
  }
  const auto sa = linalg::orthonormalize(a, 1e-9);
  const auto sb = linalg::orthonormalize(b, 1e-9);
  const auto is = linalg::intersect(sa, sb);
  CHECK(is.dim() == expected);
  for (long i = 0; i < is.dim(); ++i) {
    CHECK(linalg::membership_residual(is.basis.col(i), sa) < 1e-9);
    CHECK(linalg::membership_residual(is.basis.col(i), sb) < 1e-9);
  }
}

TEST_CASE("numeric_rank examples") {
  CHECK(linalg::numeric_rank(Mat::Identity(3, 3), 1e-9) == 3);
  CHECK(linalg::numeric_rank(Mat::Zero(3, 2), 1e-9) == 0);
  Mat m(2, 2);
  m << 1, 1, 0, 1e-12;
  CHECK(linalg::numeric_rank(m, 1e-9) == 1);
}

TEST_CASE("random subspaces: dim(A+B)=a+b, dim(A∩B)=0 when a+b<=n") {
  for (uint64_t trial = 0; trial < 20; ++trial) {
    Rng rng(mix_seed(42, trial));
    const int n = 9, a = 3, b = 4;
    Mat ma(n, a), mb(n, b);
    for (long j = 0; j < a; ++j) ma.col(j) = rng.normal_vector(n);
    for (long j = 0; j < b; ++j) mb.col(j) = rng.normal_vector(n);
    const auto sa = linalg::orthonormalize(ma, 1e-9);
    const auto sb = linalg::orthonormalize(mb, 1e-9);
    CHECK(linalg::span_sum(sa, sb).dim() == a + b);
    CHECK(linalg::intersect(sa, sb).dim() == 0);
  }
}

TEST_CASE("orthonormalize is span-invariant under permutation and scaling") {
  Rng rng(7);
  const int n = 10;
  Mat m(n, 5);
  for (long j = 0; j < 5; ++j) m.col(j) = rng.normal_vector(n);
  const auto s1 = linalg::orthonormalize(m, 1e-9);
  Mat m2(n, 5);
  const int perm[5] = {3, 0, 4, 1, 2};
  for (long j = 0; j < 5; ++j) m2.col(j) = 2.5 * m.col(perm[j]);
  const auto s2 = linalg::orthonormalize(m2, 1e-9);
  CHECK(s1.dim() == s2.dim());
  CHECK(linalg::subspace_gap(s1, s2) < 1e-10);
  CHECK(linalg::subspace_gap(s2, s1) < 1e-10);
}

TEST_CASE("dimension mismatches raise") {
  const auto s = linalg::orthonormalize(Mat::Identity(3, 2), 1e-9);
  Vec v(4);
  v.setZero();
  CHECK_THROWS_AS(linalg::project(v, s), DimensionMismatch);
  const auto t = linalg::orthonormalize(Mat::Identity(4, 2), 1e-9);
  CHECK_THROWS_AS(linalg::intersect(s, t), DimensionMismatch);
}
