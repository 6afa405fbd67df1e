#include "polar/liealg.hpp"

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include <array>
#include <map>
#include <mutex>

#include "polar/kernels.hpp"

namespace polar::liealg {

namespace {

using CMat = Eigen::MatrixXcd;
using Cplx = std::complex<double>;

std::string fam_name(Family f) {
  switch (f) {
    case Family::so: return "so";
    case Family::u: return "u";
    case Family::su: return "su";
    case Family::sp: return "sp";
  }
  return "?";
}

}  // namespace

std::vector<Mat> MatrixLieAlgebra::matrices() const {
  std::vector<Mat> out;
  out.reserve(static_cast<size_t>(dim()));
  for (int i = 0; i < dim(); ++i) out.push_back(matrix(i));
  return out;
}

Mat realify_complex(const CMat& m) {
  Mat r = Mat::Zero(2 * m.rows(), 2 * m.cols());
  for (long i = 0; i < m.rows(); ++i)
    for (long j = 0; j < m.cols(); ++j) {
      const double a = m(i, j).real(), b = m(i, j).imag();
      r(2 * i, 2 * j) = a;
      r(2 * i, 2 * j + 1) = -b;
      r(2 * i + 1, 2 * j) = b;
      r(2 * i + 1, 2 * j + 1) = a;
    }
  return r;
}

namespace {

CMat derealify_complex(const Mat& r) {
  if (r.rows() % 2 || r.cols() % 2)
    throw DimensionMismatch("derealify_complex: odd real dimension");
  CMat m(r.rows() / 2, r.cols() / 2);
  for (long i = 0; i < m.rows(); ++i)
    for (long j = 0; j < m.cols(); ++j) {
      const double a = r(2 * i, 2 * j), b = r(2 * i + 1, 2 * j);
      if (std::abs(r(2 * i, 2 * j + 1) + b) > 1e-9 ||
          std::abs(r(2 * i + 1, 2 * j + 1) - a) > 1e-9)
        throw Error("derealify_complex: matrix is not a realified complex matrix");
      m(i, j) = Cplx(a, b);
    }
  return m;
}

}  // namespace

Mat complex_structure(int n) {
  return realify_complex(CMat::Identity(n, n) * Cplx(0, 1));
}

QuatMat QuatMat::zero(int rows, int cols) {
  QuatMat q;
  q.a = Mat::Zero(rows, cols);
  q.b = Mat::Zero(rows, cols);
  q.c = Mat::Zero(rows, cols);
  q.d = Mat::Zero(rows, cols);
  return q;
}

QuatMat QuatMat::operator*(const QuatMat& o) const {
  QuatMat r;
  r.a = a * o.a - b * o.b - c * o.c - d * o.d;
  r.b = a * o.b + b * o.a + c * o.d - d * o.c;
  r.c = a * o.c - b * o.d + c * o.a + d * o.b;
  r.d = a * o.d + b * o.c - c * o.b + d * o.a;
  return r;
}

QuatMat QuatMat::operator+(const QuatMat& o) const {
  QuatMat r;
  r.a = a + o.a;
  r.b = b + o.b;
  r.c = c + o.c;
  r.d = d + o.d;
  return r;
}

QuatMat QuatMat::conjugate_transpose() const {
  QuatMat r;
  r.a = a.transpose();
  r.b = -b.transpose();
  r.c = -c.transpose();
  r.d = -d.transpose();
  return r;
}

Mat realify_quaternion(const QuatMat& m) {
  const long rows = m.a.rows(), cols = m.a.cols();
  Mat r = Mat::Zero(4 * rows, 4 * cols);
  for (long i = 0; i < rows; ++i)
    for (long j = 0; j < cols; ++j) {
      const double a = m.a(i, j), b = m.b(i, j), c = m.c(i, j), d = m.d(i, j);
      // left multiplication by a+bi+cj+dk on coordinates (1, i, j, k)
      Mat block(4, 4);
      block << a, -b, -c, -d,
               b,  a, -d,  c,
               c,  d,  a, -b,
               d, -c,  b,  a;
      r.block(4 * i, 4 * j, 4, 4) = block;
    }
  return r;
}

long classical_dim(Family f, int n) {
  switch (f) {
    case Family::so: return static_cast<long>(n) * (n - 1) / 2;
    case Family::u: return static_cast<long>(n) * n;
    case Family::su: return static_cast<long>(n) * n - 1;
    case Family::sp: return static_cast<long>(n) * (2 * n + 1);
  }
  return 0;
}

MatrixLieAlgebra algebra_from_span(const std::vector<Mat>& span, int ambient_n,
                                   const std::string& label, Scalar scalar,
                                   int structured_n) {
  std::vector<Vec> flat;
  flat.reserve(span.size());
  for (const Mat& m : span) {
    if (m.rows() != ambient_n || m.cols() != ambient_n)
      throw DimensionMismatch(label + ": span matrix has wrong ambient");
    flat.push_back(vec_rowmajor(m));
  }
  MatrixLieAlgebra alg;
  alg.ambient_n = ambient_n;
  alg.basis = linalg::orthonormalize(flat, static_cast<long>(ambient_n) * ambient_n);
  alg.label = label;
  alg.scalar = scalar;
  alg.structured_n = structured_n > 0 ? structured_n : ambient_n;
  const double skew = skewness_residual(alg);
  if (skew > 1e-12)
    throw Error(label + ": basis not skew-symmetric, residual " + std::to_string(skew));
  const double clo = closure_residual_sampled(alg);
  if (clo > 1e-8)
    throw Error(label + ": bracket closure residual " + std::to_string(clo));
  return alg;
}

MatrixLieAlgebra algebra_from_subspace(const linalg::Subspace& span, int ambient_n,
                                       const std::string& label) {
  MatrixLieAlgebra alg;
  alg.ambient_n = ambient_n;
  alg.basis = span;
  alg.label = label;
  alg.scalar = Scalar::Real;
  alg.structured_n = ambient_n;
  return alg;
}

namespace {
MatrixLieAlgebra build_classical_impl(Family f, int n);
}

MatrixLieAlgebra build_classical(Family f, int n) {
  static std::map<std::pair<int, int>, MatrixLieAlgebra> cache;
  static std::mutex mu;
  const std::pair<int, int> key{static_cast<int>(f), n};
  {
    std::lock_guard<std::mutex> lock(mu);
    const auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  MatrixLieAlgebra alg = build_classical_impl(f, n);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(key, std::move(alg)).first->second;
}

namespace {

MatrixLieAlgebra build_classical_impl(Family f, int n) {
  if (n < 1 || (f == Family::su && n < 2))
    throw Error("build_classical: unsupported size for " + fam_name(f));
  std::vector<Mat> span;
  if (f == Family::so) {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        Mat m = Mat::Zero(n, n);
        m(i, j) = 1;
        m(j, i) = -1;
        span.push_back(m);
      }
    return algebra_from_span(span, n, "so(" + std::to_string(n) + ")",
                             Scalar::Real, n);
  }
  if (f == Family::u || f == Family::su) {
    std::vector<CMat> cs;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        CMat m = CMat::Zero(n, n);
        m(i, j) = 1;
        m(j, i) = -1;
        cs.push_back(m);
        m = CMat::Zero(n, n);
        m(i, j) = Cplx(0, 1);
        m(j, i) = Cplx(0, 1);
        cs.push_back(m);
      }
    if (f == Family::u) {
      for (int k = 0; k < n; ++k) {
        CMat m = CMat::Zero(n, n);
        m(k, k) = Cplx(0, 1);
        cs.push_back(m);
      }
    } else {
      for (int k = 0; k + 1 < n; ++k) {
        CMat m = CMat::Zero(n, n);
        m(k, k) = Cplx(0, 1);
        m(k + 1, k + 1) = Cplx(0, -1);
        cs.push_back(m);
      }
    }
    for (const CMat& m : cs) span.push_back(realify_complex(m));
    return algebra_from_span(span, 2 * n,
                             fam_name(f) + "(" + std::to_string(n) + ")",
                             Scalar::Complex, n);
  }
  // sp(n): quaternionic skew-Hermitian
  auto unit = [&](int i, int j, int comp, double sym) {
    QuatMat q = QuatMat::zero(n, n);
    Mat* parts[4] = {&q.a, &q.b, &q.c, &q.d};
    (*parts[comp])(i, j) = 1;
    if (i != j) (*parts[comp])(j, i) = sym;
    return q;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      span.push_back(realify_quaternion(unit(i, j, 0, -1)));
      span.push_back(realify_quaternion(unit(i, j, 1, +1)));
      span.push_back(realify_quaternion(unit(i, j, 2, +1)));
      span.push_back(realify_quaternion(unit(i, j, 3, +1)));
    }
  for (int k = 0; k < n; ++k) {
    span.push_back(realify_quaternion(unit(k, k, 1, 0)));
    span.push_back(realify_quaternion(unit(k, k, 2, 0)));
    span.push_back(realify_quaternion(unit(k, k, 3, 0)));
  }
  return algebra_from_span(span, 4 * n, "sp(" + std::to_string(n) + ")",
                           Scalar::Quaternion, n);
}

}  // namespace

// ---------------------------------------------------------------------------
// Octonions (Cayley-Dickson over the quaternions): e4=(0,1), e_{4+i}=(0,e_i).
// Yields e1e2=e3, e1e4=e5, e2e4=e6, e3e4=e7.

namespace {

using Quat = std::array<double, 4>;

Quat qmul(const Quat& x, const Quat& y) {
  return Quat{x[0] * y[0] - x[1] * y[1] - x[2] * y[2] - x[3] * y[3],
              x[0] * y[1] + x[1] * y[0] + x[2] * y[3] - x[3] * y[2],
              x[0] * y[2] - x[1] * y[3] + x[2] * y[0] + x[3] * y[1],
              x[0] * y[3] + x[1] * y[2] - x[2] * y[1] + x[3] * y[0]};
}

Quat qconj(const Quat& x) { return Quat{x[0], -x[1], -x[2], -x[3]}; }

}  // namespace

Eigen::Matrix<double, 8, 1> Octonions::multiply(
    const Eigen::Matrix<double, 8, 1>& x, const Eigen::Matrix<double, 8, 1>& y) {
  const Quat a{x[0], x[1], x[2], x[3]}, b{x[4], x[5], x[6], x[7]};
  const Quat c{y[0], y[1], y[2], y[3]}, d{y[4], y[5], y[6], y[7]};
  // (a,b)(c,d) = (ac - conj(d) b, d a + b conj(c))
  Quat first{}, second{};
  const Quat t1 = qmul(a, c), t2 = qmul(qconj(d), b);
  const Quat t3 = qmul(d, a), t4 = qmul(b, qconj(c));
  for (int i = 0; i < 4; ++i) {
    first[i] = t1[i] - t2[i];
    second[i] = t3[i] + t4[i];
  }
  Eigen::Matrix<double, 8, 1> out;
  out << first[0], first[1], first[2], first[3], second[0], second[1], second[2], second[3];
  return out;
}

Mat Octonions::left_mult(int u) {
  Mat m(8, 8);
  Eigen::Matrix<double, 8, 1> eu = Eigen::Matrix<double, 8, 1>::Zero();
  eu[u] = 1;
  for (int v = 0; v < 8; ++v) {
    Eigen::Matrix<double, 8, 1> ev = Eigen::Matrix<double, 8, 1>::Zero();
    ev[v] = 1;
    m.col(v) = multiply(eu, ev);
  }
  return m;
}

MatrixLieAlgebra g2_in_so7() {
  // Null space of the derivation constraint D(xy) = D(x)y + xD(y) over all
  // basis pairs; restrict to the imaginary part.
  Mat table[8][8];
  for (int u = 0; u < 8; ++u) {
    Mat lu = Octonions::left_mult(u);
    for (int v = 0; v < 8; ++v) table[u][v] = lu.col(v);
  }
  const int unknowns = 64;  // D is 8x8, index r*8+c
  Mat a = Mat::Zero(8 * 64, unknowns);
  long row = 0;
  for (int u = 0; u < 8; ++u)
    for (int v = 0; v < 8; ++v) {
      const Mat luv = table[u][v];  // e_u e_v as a column
      for (int m = 0; m < 8; ++m) {
        // sum_c D[m][c] (e_u e_v)_c - sum_r D[r][u] (e_r e_v)_m
        //                          - sum_r D[r][v] (e_u e_r)_m = 0
        for (int c = 0; c < 8; ++c) a(row, m * 8 + c) += luv(c, 0);
        for (int r = 0; r < 8; ++r) {
          a(row, r * 8 + u) -= table[r][v](m, 0);
          a(row, r * 8 + v) -= table[u][r](m, 0);
        }
        ++row;
      }
    }
  Mat null = linalg::null_space(a, 1e-9);
  if (null.cols() != 14)
    throw Error("g2_in_so7: derivation space has dim " + std::to_string(null.cols()));
  std::vector<Mat> span;
  for (long k = 0; k < null.cols(); ++k) {
    Mat d(8, 8);
    for (int r = 0; r < 8; ++r)
      for (int c = 0; c < 8; ++c) d(r, c) = null(r * 8 + c, k);
    if (d.col(0).norm() > 1e-8 || d.row(0).norm() > 1e-8)
      throw Error("g2_in_so7: derivation does not annihilate the unit");
    span.push_back(d.block(1, 1, 7, 7));
  }
  return algebra_from_span(span, 7, "g2", Scalar::Real, 7);
}

MatrixLieAlgebra spin7_in_so8() {
  std::vector<Mat> span;
  for (int i = 1; i < 8; ++i)
    for (int j = i + 1; j < 8; ++j)
      span.push_back(0.5 * Octonions::left_mult(i) * Octonions::left_mult(j));
  MatrixLieAlgebra alg = algebra_from_span(span, 8, "spin7", Scalar::Real, 8);
  if (alg.dim() != 21) throw Error("spin7_in_so8: wrong dimension");
  return alg;
}

namespace {

std::vector<Mat> spin9_gammas() {
  std::vector<Mat> gam;
  for (int u = 0; u < 8; ++u) {
    const Mat l = Octonions::left_mult(u);
    Mat g = Mat::Zero(16, 16);
    g.block(0, 8, 8, 8) = l;
    g.block(8, 0, 8, 8) = l.transpose();
    gam.push_back(g);
  }
  Mat g = Mat::Zero(16, 16);
  g.block(0, 0, 8, 8) = Mat::Identity(8, 8);
  g.block(8, 8, 8, 8) = -Mat::Identity(8, 8);
  gam.push_back(g);
  return gam;
}

}  // namespace

MatrixLieAlgebra spin9_in_so16() {
  const auto gam = spin9_gammas();
  std::vector<Mat> span;
  for (int i = 0; i < 9; ++i)
    for (int j = i + 1; j < 9; ++j) span.push_back(0.5 * gam[i] * gam[j]);
  MatrixLieAlgebra alg = algebra_from_span(span, 16, "spin9", Scalar::Real, 16);
  if (alg.dim() != 36) throw Error("spin9_in_so16: wrong dimension");
  return alg;
}

MatrixLieAlgebra spin8_in_so16() {
  const auto gam = spin9_gammas();
  std::vector<Mat> span;
  for (int i = 0; i < 8; ++i)
    for (int j = i + 1; j < 8; ++j) span.push_back(0.5 * gam[i] * gam[j]);
  MatrixLieAlgebra alg = algebra_from_span(span, 16, "spin8", Scalar::Real, 16);
  if (alg.dim() != 28) throw Error("spin8_in_so16: wrong dimension");
  return alg;
}

HalfSpinGenerators half_spin_generators() {
  HalfSpinGenerators h;
  for (int i = 0; i < 8; ++i)
    for (int j = i + 1; j < 8; ++j) {
      const Mat li = Octonions::left_mult(i), lj = Octonions::left_mult(j);
      h.plus.push_back(0.5 * li * lj.transpose());
      h.minus.push_back(0.5 * li.transpose() * lj);
    }
  return h;
}

MatrixLieAlgebra adjoint_su3_in_so8() {
  MatrixLieAlgebra su3 = build_classical(Family::su, 3);
  const auto mats = su3.matrices();
  std::vector<Mat> span;
  for (const Mat& x : mats) {
    Mat ad(8, 8);
    for (int b = 0; b < 8; ++b) {
      const Vec col = vec_rowmajor(bracket(x, su3.matrix(b)));
      ad.col(b) = su3.basis.basis.transpose() * col;
    }
    span.push_back(ad);
  }
  return algebra_from_span(span, 8, "ad(su3)", Scalar::Real, 8);
}

MatrixLieAlgebra symplectic_in_unitary(int n) {
  // sp(n) inside su(2n): [[A, B], [-conj(B), conj(A)]], A in u(n), B symmetric.
  std::vector<CMat> cs;
  auto push = [&](const CMat& a, const CMat& b) {
    CMat m = CMat::Zero(2 * n, 2 * n);
    m.topLeftCorner(n, n) = a;
    m.topRightCorner(n, n) = b;
    m.bottomLeftCorner(n, n) = -b.conjugate();
    m.bottomRightCorner(n, n) = a.conjugate();
    cs.push_back(m);
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      CMat a = CMat::Zero(n, n);
      a(i, j) = 1;
      a(j, i) = -1;
      push(a, CMat::Zero(n, n));
      a = CMat::Zero(n, n);
      a(i, j) = Cplx(0, 1);
      a(j, i) = Cplx(0, 1);
      push(a, CMat::Zero(n, n));
      CMat b = CMat::Zero(n, n);
      b(i, j) = 1;
      b(j, i) = 1;
      push(CMat::Zero(n, n), b);
      b = CMat::Zero(n, n);
      b(i, j) = Cplx(0, 1);
      b(j, i) = Cplx(0, 1);
      push(CMat::Zero(n, n), b);
    }
  for (int k = 0; k < n; ++k) {
    CMat a = CMat::Zero(n, n);
    a(k, k) = Cplx(0, 1);
    push(a, CMat::Zero(n, n));
    CMat b = CMat::Zero(n, n);
    b(k, k) = 1;
    push(CMat::Zero(n, n), b);
    b(k, k) = Cplx(0, 1);
    push(CMat::Zero(n, n), b);
  }
  std::vector<Mat> span;
  for (const CMat& m : cs) span.push_back(realify_complex(m));
  MatrixLieAlgebra alg = algebra_from_span(
      span, 4 * n, "sp(" + std::to_string(n) + ")<su(" + std::to_string(2 * n) + ")",
      Scalar::Complex, 2 * n);
  if (alg.dim() != classical_dim(Family::sp, n))
    throw Error("symplectic_in_unitary: wrong dimension");
  return alg;
}

MatrixLieAlgebra orthogonal_in_unitary(int n) {
  MatrixLieAlgebra so = build_classical(Family::so, n);
  std::vector<Mat> span;
  for (const Mat& x : so.matrices()) span.push_back(realify_complex(x.cast<Cplx>()));
  return algebra_from_span(span, 2 * n,
                           "so(" + std::to_string(n) + ")<su(" + std::to_string(n) + ")",
                           Scalar::Complex, n);
}

namespace {

MatrixLieAlgebra embed_block_diagonal(const std::vector<MatrixLieAlgebra>& comps) {
  int total = 0;
  for (const auto& c : comps) total += c.ambient_n;
  std::vector<Mat> span;
  int offset = 0;
  for (const auto& c : comps) {
    for (const Mat& x : c.matrices()) {
      Mat m = Mat::Zero(total, total);
      m.block(offset, offset, c.ambient_n, c.ambient_n) = x;
      span.push_back(m);
    }
    offset += c.ambient_n;
  }
  std::string label;
  for (const auto& c : comps) {
    if (!label.empty()) label += "+";
    label += c.label;
  }
  Scalar scalar = comps.front().scalar;
  int structured = 0;
  for (const auto& c : comps) {
    if (c.scalar != scalar) scalar = Scalar::Real;
  }
  if (scalar != Scalar::Real) {
    for (const auto& c : comps) structured += c.structured_n;
  } else {
    structured = total;
  }
  return algebra_from_span(span, total, label, scalar, structured);
}

MatrixLieAlgebra embed_tensor(const std::vector<MatrixLieAlgebra>& comps) {
  if (comps.size() != 2) throw Error("TensorProduct: needs two components");
  const auto& A = comps[0];
  const auto& B = comps[1];
  const std::string label = "tensor(" + A.label + "," + B.label + ")";
  if (A.scalar == Scalar::Real && B.scalar == Scalar::Real) {
    const int p = A.ambient_n, q = B.ambient_n;
    std::vector<Mat> span;
    for (const Mat& x : A.matrices())
      span.push_back(Eigen::kroneckerProduct(x, Mat::Identity(q, q)).eval());
    for (const Mat& y : B.matrices())
      span.push_back(Eigen::kroneckerProduct(Mat::Identity(p, p), y).eval());
    return algebra_from_span(span, p * q, label, Scalar::Real, p * q);
  }
  if (A.scalar == Scalar::Complex && B.scalar == Scalar::Complex) {
    const int p = A.structured_n, q = B.structured_n;
    std::vector<Mat> span;
    for (const Mat& x : A.matrices()) {
      const CMat cx = derealify_complex(x);
      span.push_back(realify_complex(
          Eigen::kroneckerProduct(cx, CMat::Identity(q, q)).eval()));
    }
    for (const Mat& y : B.matrices()) {
      const CMat cy = derealify_complex(y);
      span.push_back(realify_complex(
          Eigen::kroneckerProduct(CMat::Identity(p, p), cy).eval()));
    }
    return algebra_from_span(span, 2 * p * q, label, Scalar::Complex, p * q);
  }
  if (A.scalar == Scalar::Quaternion && B.scalar == Scalar::Quaternion) {
    // sp(p) (+) sp(q) acting on H^{p x q} = R^{4pq} by M -> XM and M -> MY.
    const int p = A.structured_n, q = B.structured_n;
    const int dimr = 4 * p * q;
    auto to_quat = [](const Mat& real, int rows, int cols) {
      QuatMat qm = QuatMat::zero(rows, cols);
      for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
          qm.a(i, j) = real(4 * i, 4 * j);
          qm.b(i, j) = real(4 * i + 1, 4 * j);
          qm.c(i, j) = real(4 * i + 2, 4 * j);
          qm.d(i, j) = real(4 * i + 3, 4 * j);
        }
      return qm;
    };
    auto entry_basis = [&](int r, int c, int u) {
      QuatMat m = QuatMat::zero(p, q);
      Mat* parts[4] = {&m.a, &m.b, &m.c, &m.d};
      (*parts[u])(r, c) = 1;
      return m;
    };
    auto vectorize = [&](const QuatMat& m) {
      Vec v(dimr);
      for (int r = 0; r < p; ++r)
        for (int c = 0; c < q; ++c) {
          const long base = (static_cast<long>(r) * q + c) * 4;
          v[base] = m.a(r, c);
          v[base + 1] = m.b(r, c);
          v[base + 2] = m.c(r, c);
          v[base + 3] = m.d(r, c);
        }
      return v;
    };
    std::vector<Mat> span;
    auto operator_matrix = [&](auto&& apply) {
      Mat op(dimr, dimr);
      long col = 0;
      for (int r = 0; r < p; ++r)
        for (int c = 0; c < q; ++c)
          for (int u = 0; u < 4; ++u) op.col(col++) = vectorize(apply(entry_basis(r, c, u)));
      return op;
    };
    for (const Mat& xr : A.matrices()) {
      const QuatMat x = to_quat(xr, p, p);
      span.push_back(operator_matrix([&](const QuatMat& m) { return x * m; }));
    }
    for (const Mat& yr : B.matrices()) {
      const QuatMat y = to_quat(yr, q, q);
      span.push_back(operator_matrix([&](const QuatMat& m) { return m * y; }));
    }
    return algebra_from_span(span, dimr, label, Scalar::Real, dimr);
  }
  if (A.scalar == Scalar::Real && B.scalar == Scalar::Quaternion) {
    // so(p) (+) sp(q) inside sp(pq)
    const int p = A.ambient_n, q = B.structured_n;
    std::vector<Mat> span;
    for (const Mat& x : A.matrices()) {
      QuatMat m = QuatMat::zero(p * q, p * q);
      m.a = Eigen::kroneckerProduct(x, Mat::Identity(q, q)).eval();
      span.push_back(realify_quaternion(m));
    }
    for (const Mat& yr : B.matrices()) {
      QuatMat y = QuatMat::zero(q, q);
      for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j) {
          y.a(i, j) = yr(4 * i, 4 * j);
          y.b(i, j) = yr(4 * i + 1, 4 * j);
          y.c(i, j) = yr(4 * i + 2, 4 * j);
          y.d(i, j) = yr(4 * i + 3, 4 * j);
        }
      QuatMat m = QuatMat::zero(p * q, p * q);
      const Mat ip = Mat::Identity(p, p);
      m.a = Eigen::kroneckerProduct(ip, y.a).eval();
      m.b = Eigen::kroneckerProduct(ip, y.b).eval();
      m.c = Eigen::kroneckerProduct(ip, y.c).eval();
      m.d = Eigen::kroneckerProduct(ip, y.d).eval();
      span.push_back(realify_quaternion(m));
    }
    return algebra_from_span(span, 4 * p * q, label, Scalar::Quaternion, p * q);
  }
  throw Error("TensorProduct: unsupported scalar combination");
}

}  // namespace

MatrixLieAlgebra embed(const EmbeddingSpec& spec,
                       const std::vector<MatrixLieAlgebra>& components) {
  using K = EmbeddingSpec::Kind;
  switch (spec.kind) {
    case K::BlockDiagonal:
      if (components.empty()) throw Error("BlockDiagonal: no components");
      return embed_block_diagonal(components);
    case K::TensorProduct:
      return embed_tensor(components);
    case K::RealifyComplex: {
      if (components.size() != 1 || components[0].scalar != Scalar::Complex)
        throw Error("RealifyComplex: needs one complex component");
      MatrixLieAlgebra alg = components[0];
      alg.scalar = Scalar::Real;
      alg.structured_n = alg.ambient_n;
      alg.label += "<so(" + std::to_string(alg.ambient_n) + ")";
      return alg;
    }
    case K::RealifyQuaternion: {
      if (components.size() != 1 || components[0].scalar != Scalar::Quaternion)
        throw Error("RealifyQuaternion: needs one quaternionic component");
      MatrixLieAlgebra alg = components[0];
      alg.scalar = Scalar::Real;
      alg.structured_n = alg.ambient_n;
      alg.label += "<so(" + std::to_string(alg.ambient_n) + ")";
      return alg;
    }
    case K::UnitaryInOrthogonal: {
      if (spec.params.size() != 1) throw Error("UnitaryInOrthogonal: needs n");
      MatrixLieAlgebra alg = build_classical(Family::u, static_cast<int>(spec.params[0]));
      alg.scalar = Scalar::Real;
      alg.structured_n = alg.ambient_n;
      return alg;
    }
    case K::SymplecticInUnitary:
      if (spec.params.size() != 1) throw Error("SymplecticInUnitary: needs n");
      return symplectic_in_unitary(static_cast<int>(spec.params[0]));
    case K::OrthogonalInUnitary:
      if (spec.params.size() != 1) throw Error("OrthogonalInUnitary: needs n");
      return orthogonal_in_unitary(static_cast<int>(spec.params[0]));
    case K::Diagonal: {
      if (components.size() != 1) throw Error("Diagonal: needs one component");
      const auto& c = components[0];
      std::vector<Mat> span;
      for (const Mat& x : c.matrices()) {
        Mat m = Mat::Zero(2 * c.ambient_n, 2 * c.ambient_n);
        m.topLeftCorner(c.ambient_n, c.ambient_n) = x;
        m.bottomRightCorner(c.ambient_n, c.ambient_n) = x;
        span.push_back(m);
      }
      return algebra_from_span(span, 2 * c.ambient_n, "diag(" + c.label + ")",
                               c.scalar, 2 * c.structured_n);
    }
    case K::G2InSO7: return g2_in_so7();
    case K::Spin7InSO8: return spin7_in_so8();
    case K::Spin9InSO16: return spin9_in_so16();
    case K::AdjointSU3InSO8: return adjoint_su3_in_so8();
    case K::ConjugateBy: {
      if (components.size() != 1) throw Error("ConjugateBy: needs one component");
      const Mat& p = spec.conj_element;
      const auto& c = components[0];
      if (p.rows() != c.ambient_n || (p * p.transpose() - Mat::Identity(p.rows(), p.rows())).norm() > 1e-10)
        throw Error("ConjugateBy: element is not orthogonal in the ambient");
      std::vector<Mat> span;
      for (const Mat& x : c.matrices()) span.push_back(p * x * p.transpose());
      return algebra_from_span(span, c.ambient_n, c.label + "^conj", Scalar::Real,
                               c.ambient_n);
    }
  }
  throw Error("embed: unknown kind");
}

Mat group_element(const MatrixLieAlgebra& alg, uint64_t seed, int steps) {
  if (steps < 1) throw Error("group_element: steps must be >= 1");
  const int n = alg.ambient_n;
  Mat g = Mat::Identity(n, n);
  if (alg.dim() == 0) return g;
  Rng rng(mix_seed(seed, 0xa11ce));
  for (int s = 0; s < steps; ++s) {
    Vec c = rng.normal_vector(alg.dim());
    Vec flat = alg.basis.basis * c;
    const double norm = flat.norm();
    if (norm > 0) flat /= norm;
    const Mat z = unvec_rowmajor(flat, n);
    g = g * z.exp();
  }
  const double orth = (g.transpose() * g - Mat::Identity(n, n)).norm();
  if (orth > 1e-10)
    throw Error("group_element: orthogonality residual " + std::to_string(orth));
  return g;
}

linalg::Subspace adjoint_transport(const Mat& g, const linalg::Subspace& s, int n) {
  if (s.ambient_dim != static_cast<long>(n) * n)
    throw DimensionMismatch("adjoint_transport: subspace is not of n x n matrices");
  const Mat g_inv = g.transpose();
  std::vector<Mat> in;
  in.reserve(static_cast<size_t>(s.dim()));
  for (long i = 0; i < s.dim(); ++i) in.push_back(unvec_rowmajor(s.basis.col(i), n));
  std::vector<Mat> out;
  kernels::conjugate_all(g_inv, g, in, out);
  std::vector<Vec> flat;
  flat.reserve(out.size());
  for (const Mat& m : out) flat.push_back(vec_rowmajor(m));
  linalg::Subspace t = linalg::orthonormalize(flat, s.ambient_dim, s.tol);
  if (t.dim() != s.dim())
    throw Error("adjoint_transport: dimension not preserved");
  return t;
}

int centralizer_dim_in(const linalg::Subspace& span, const Mat& z, int n,
                       double tol) {
  if (span.dim() == 0) return 0;
  const Mat m = kernels::ad_action_matrix(z, span.basis, n);
  return static_cast<int>(span.dim()) - linalg::numeric_rank(m, tol);
}

int algebra_rank(const MatrixLieAlgebra& alg, int seeds) {
  if (alg.rank_cache) return *alg.rank_cache;
  if (alg.dim() == 0) return 0;
  std::vector<long> values;
  for (int s = 0; s < seeds; ++s) {
    Rng rng(mix_seed(0x7a5c0, static_cast<uint64_t>(s) * 1315423911ULL + 17));
    Vec c = rng.normal_vector(alg.dim());
    Vec flat = alg.basis.basis * c;
    flat /= flat.norm();
    values.push_back(centralizer_dim_in(alg.basis, unvec_rowmajor(flat, alg.ambient_n),
                                        alg.ambient_n));
  }
  for (long v : values)
    if (v != values[0])
      throw Inconclusive("algebra_rank: seeds disagree for " + alg.label, values);
  alg.rank_cache = static_cast<int>(values[0]);
  return *alg.rank_cache;
}

double skewness_residual(const MatrixLieAlgebra& alg) {
  double worst = 0.0;
  for (int i = 0; i < alg.dim(); ++i) {
    const Mat x = alg.matrix(i);
    worst = std::max(worst, (x + x.transpose()).cwiseAbs().maxCoeff());
  }
  return worst;
}

double closure_residual_sampled(const MatrixLieAlgebra& alg, int max_pairs,
                                uint64_t seed) {
  if (alg.dim() < 2) return 0.0;
  return kernels::closure_residual(alg.basis.basis, alg.ambient_n, max_pairs, seed);
}

linalg::Subspace remove_direction(const linalg::Subspace& span, const Vec& dir) {
  const double n = dir.norm();
  if (n == 0) return span;
  const Vec u = dir / n;
  Mat shifted = span.basis - u * (u.transpose() * span.basis);
  linalg::Subspace out = linalg::orthonormalize(shifted, std::max(span.tol, 1e-10));
  out.tol = span.tol;
  return out;
}

}  // namespace polar::liealg
