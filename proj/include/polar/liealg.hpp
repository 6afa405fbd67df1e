// Compact classical matrix Lie algebras realified into a single so(N), plus
// the subgroup embeddings used by the polarity engine: block and tensor
// embeddings, complex/quaternionic realifications, octonion-derivation G2,
// and Clifford-generator spin representations.
#pragma once

#include <optional>

#include "polar/linalg.hpp"

namespace polar::liealg {

enum class Family { so, u, su, sp };
enum class Scalar { Real, Complex, Quaternion };

struct MatrixLieAlgebra {
  int ambient_n = 0;          // real N: algebra lives in N x N matrices
  linalg::Subspace basis;     // subspace of R^{N^2}
  std::string label;
  Scalar scalar = Scalar::Real;
  int structured_n = 0;       // size before realification
  mutable std::optional<int> rank_cache;

  int dim() const { return static_cast<int>(basis.dim()); }
  Mat matrix(int i) const { return unvec_rowmajor(basis.basis.col(i), ambient_n); }
  std::vector<Mat> matrices() const;
};

// Realification conventions (fixed project-wide): complex i acts per
// coordinate as [[0,-1],[1,0]]; quaternions via 4x4 left-multiplication
// blocks in basis order (1, i, j, k).
Mat realify_complex(const Eigen::MatrixXcd& m);
Mat complex_structure(int n);  // realify(i * I_n), 2n x 2n

struct QuatMat {  // quaternionic matrix q = a + b i + c j + d k
  Mat a, b, c, d;
  static QuatMat zero(int rows, int cols);
  QuatMat operator*(const QuatMat& o) const;
  QuatMat operator+(const QuatMat& o) const;
  QuatMat conjugate_transpose() const;
};
Mat realify_quaternion(const QuatMat& m);

MatrixLieAlgebra build_classical(Family f, int n);

// dim so(n), u(n), su(n), sp(n)
long classical_dim(Family f, int n);

struct EmbeddingSpec {
  enum class Kind {
    BlockDiagonal,
    TensorProduct,
    RealifyComplex,
    RealifyQuaternion,
    UnitaryInOrthogonal,
    SymplecticInUnitary,
    OrthogonalInUnitary,
    Diagonal,
    G2InSO7,
    Spin7InSO8,
    Spin9InSO16,
    AdjointSU3InSO8,
    ConjugateBy,
  };
  Kind kind;
  std::vector<long> params;
  Mat conj_element;  // ConjugateBy only
};

MatrixLieAlgebra embed(const EmbeddingSpec& spec,
                       const std::vector<MatrixLieAlgebra>& components);

// Named constructions used directly by fixtures.
MatrixLieAlgebra g2_in_so7();
MatrixLieAlgebra spin7_in_so8();
MatrixLieAlgebra spin9_in_so16();
MatrixLieAlgebra spin8_in_so16();  // sum of the two half-spin representations
MatrixLieAlgebra adjoint_su3_in_so8();
MatrixLieAlgebra symplectic_in_unitary(int n);  // sp(n) inside su(2n)
MatrixLieAlgebra orthogonal_in_unitary(int n);  // so(n) inside su(n)

// Half-spin generator images delta1/delta2 on R^8 for the labels (i<j<=8),
// aligned with the spin8_in_so16 generator order.
struct HalfSpinGenerators {
  std::vector<Mat> plus, minus;  // 8x8 skew generators
};
HalfSpinGenerators half_spin_generators();

// Octonion arithmetic in the Cayley-Dickson convention over the quaternions:
// e1e2 = e3, e1e4 = e5, e2e4 = e6, e3e4 = e7.
struct Octonions {
  // left-multiplication matrix of the basis unit e_u on R^8
  static Mat left_mult(int u);
  static Eigen::Matrix<double, 8, 1> multiply(const Eigen::Matrix<double, 8, 1>& x,
                                              const Eigen::Matrix<double, 8, 1>& y);
};

// Build an algebra from an explicit span of skew matrices (orthonormalizes,
// validates skewness and sampled bracket closure).
MatrixLieAlgebra algebra_from_span(const std::vector<Mat>& span, int ambient_n,
                                   const std::string& label,
                                   Scalar scalar = Scalar::Real,
                                   int structured_n = 0);

MatrixLieAlgebra algebra_from_subspace(const linalg::Subspace& span, int ambient_n,
                                       const std::string& label);

// Product of `steps` exponentials of seeded random unit-norm combinations of
// the basis; orthogonal to 1e-10.
Mat group_element(const MatrixLieAlgebra& alg, uint64_t seed, int steps);

linalg::Subspace adjoint_transport(const Mat& g, const linalg::Subspace& s, int n);

// Centralizer dimension of a generic element, stabilized over `seeds` seeds.
// Throws Inconclusive when seeds disagree.
int algebra_rank(const MatrixLieAlgebra& alg, int seeds = 3);

// dim {Y in span : [Z, Y] = 0}
int centralizer_dim_in(const linalg::Subspace& span, const Mat& z, int n,
                       double tol = 1e-7);

double skewness_residual(const MatrixLieAlgebra& alg);
double closure_residual_sampled(const MatrixLieAlgebra& alg, int max_pairs = 256,
                                uint64_t seed = 7);

// Frobenius-orthogonal complement of a single direction inside a span
// (used for the traceless slice of block unitary algebras).
linalg::Subspace remove_direction(const linalg::Subspace& span, const Vec& dir);

}  // namespace polar::liealg
