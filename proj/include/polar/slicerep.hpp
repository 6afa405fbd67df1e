// Isotropy subalgebras, slice representations, numerical decomposition into
// invariant modules via the commutant, and equivalent-pair detection.
#pragma once

#include "polar/action.hpp"

namespace polar::slicerep {

struct LinearRep {
  liealg::MatrixLieAlgebra algebra;  // the represented isotropy algebra
  linalg::Subspace carrier;          // normal space (subspace of the matrix ambient)
  std::vector<Mat> action;           // per algebra basis element, carrier frame

  long carrier_dim() const { return carrier.dim(); }
};

liealg::MatrixLieAlgebra isotropy_subalgebra(const action::GroupAction& act,
                                             const Mat& g_elt);

// Slice representation at g: isotropy algebra acting on the orthogonal
// complement of the orbit tangent inside p.
LinearRep slice_representation(const action::GroupAction& act, const Mat& g_elt);

// Isotropy representation on all of p of a subalgebra of k (carrier = p).
LinearRep isotropy_representation(const symspace::SymmetricPair& pair,
                                  const liealg::MatrixLieAlgebra& subalg_of_k);

// Synthetic representation from explicit action matrices on R^d.
LinearRep make_rep(liealg::MatrixLieAlgebra algebra, std::vector<Mat> action_matrices);

double homomorphism_residual(const LinearRep& rep, int max_pairs = 64,
                             uint64_t seed = 5);

struct Decomposition {
  std::vector<Mat> summands;   // orthonormal columns in the carrier frame
  std::vector<int> dims;       // nontrivial summand dims (sorted desc)
  int trivial_dim = 0;
  int commutant_dim = 0;       // full commutant (symmetric + antisymmetric parts)
  double max_invariance_residual = 0.0;
  bool conclusive = true;
};

Decomposition decompose_modules(const LinearRep& rep, uint64_t seed = 1);

// True when some pair of distinct nontrivial summands admits a nonzero
// intertwiner (relative null threshold on the intertwiner Gram operator).
bool has_equivalent_pair(const LinearRep& rep, const Decomposition& dec,
                         double rel_tol = 1e-10);

// Cohomogeneity of the linear representation itself: carrier dim minus the
// generic orbit dimension span{rho(X) v}.
int rep_cohomogeneity(const LinearRep& rep, uint64_t seed = 3, int samples = 3);

}  // namespace polar::slicerep
