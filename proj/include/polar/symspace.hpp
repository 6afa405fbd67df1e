// Classical type-I symmetric pairs with explicit involution matrices and
// Cartan decompositions; Lie-triple tests, rank, and the section dimension
// bound.
#pragma once

#include "polar/liealg.hpp"

namespace polar::symspace {

enum class SpaceType { AI, AII, AIII, BDI, CI, CII, DIII };

struct SpaceId {
  SpaceType type;
  int p = 0;  // first parameter (n for AI/AII/CI/DIII)
  int q = 0;  // second parameter for AIII/BDI/CII
  bool outer = false;  // DIII': involution conjugated by an O\SO element
};

std::string space_label(const SpaceId& id);
SpaceId parse_space(const std::string& text);  // e.g. "BDI:3,4", "AII:3", "DIII:4'"

struct SymmetricPair {
  liealg::MatrixLieAlgebra g;
  Mat theta;  // orthogonal, theta^2 = +-I; involution X -> theta X theta^-1
  linalg::Subspace k;  // +1 eigenspace
  linalg::Subspace p;  // -1 eigenspace
  std::string label;
  SpaceId id;

  int ambient_n() const { return g.ambient_n; }
  long dim_p() const { return p.dim(); }
};

SymmetricPair build_symmetric_pair(const SpaceId& id);

// Table 3 closed forms.
long table_dim(const SpaceId& id);
int table_rank(const SpaceId& id);

// Realified ambient N of the pair's g.
int realified_ambient(const SpaceId& id);

// true + residual when [[X,Y],Z] stays in nu for all basis triples.
std::pair<bool, double> is_lie_triple(const linalg::Subspace& nu,
                                      const SymmetricPair& pair,
                                      double accept = 1e-6);

// Rank of the symmetric space: centralizer dimension in p of a generic
// element of p, stabilized over seeds.
int space_rank(const SymmetricPair& pair, int seeds = 3);

// rank(g) + rank(k): upper bound for sections covered by products of spheres.
int section_dim_bound(const SymmetricPair& pair);

// Maximal abelian subspace of p containing a generic element.
linalg::Subspace maximal_abelian_in_p(const SymmetricPair& pair, uint64_t seed);

// k as an algebra object (for rank computations).
liealg::MatrixLieAlgebra k_algebra(const SymmetricPair& pair);

// Involution check residuals: fixes k pointwise, negates p.
double involution_residual(const SymmetricPair& pair);

// Cartan relation residuals ([k,k]<k, [k,p]<p, [p,p]<k), sampled.
double cartan_residual(const SymmetricPair& pair, int max_pairs = 200,
                       uint64_t seed = 11);

// All (type, params) with realified ambient <= max_ambient and rank >= 1.
std::vector<SpaceId> catalog(int max_ambient);

}  // namespace polar::symspace
