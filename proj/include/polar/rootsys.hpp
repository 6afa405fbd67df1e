// Combinatorial root-system engine: root generation from Cartan matrices,
// extended Dynkin diagrams, Borel-de Siebenthal subsystems, root-level slice
// computation for pairs of maximal-rank subgroups, and the Weyl dimension
// formula in exact integer arithmetic.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace polar::rootsys {

using Coeff = std::vector<long>;  // root as coefficients over simple roots

struct RootSystem {
  char type = 'A';
  int rank = 0;
  std::vector<std::vector<long>> cartan;  // cartan[i][j] = <alpha_i, alpha_j^vee>
  std::vector<long> norm2;                // <alpha_i, alpha_i> up to one global scale
  std::vector<Coeff> roots;               // all roots, positives first then negatives
  Coeff highest;                          // highest root (marks of the extended diagram)

  long num_roots() const { return static_cast<long>(roots.size()); }
  long num_positive() const { return num_roots() / 2; }

  // 2<a, b> in the integer scaling fixed by norm2.
  long ip2(const Coeff& a, const Coeff& b) const;
  // Cartan integer <a, b^vee> (exact).
  long pairing(const Coeff& a, const Coeff& b) const;

  int index_of(const Coeff& r) const;  // -1 when not a root
  bool is_root(const Coeff& r) const { return index_of(r) >= 0; }

  // Dynkin labels of the highest root (adjoint representation weight).
  std::vector<long> adjoint_weight() const;
};

RootSystem build_root_system(char type, int rank);

// Symmetric closed subset of a root system's roots.
struct RootSubset {
  char parent_type = 'A';
  int parent_rank = 0;
  std::vector<int> members;  // sorted indices into parent roots
  std::string label;         // e.g. "A2+A2+A2", "D5+T1"
};

// Closed symmetric subsystem generated by the extended-diagram nodes that
// remain after deleting delete_vertex (0 = the lowest-root node; deleting it
// reproduces the full system).
RootSubset borel_de_siebenthal(const RootSystem& sys, int delete_vertex);

// Deletions at vertices with prime mark: the maximal-rank maximal
// subalgebras. Distinct labels, sorted.
std::vector<RootSubset> bds_enumerate(const RootSystem& sys);

// Fixed root set {alpha : alpha(x) even} of the inner involution attached to
// the fundamental coweight at node (1-based).
RootSubset parity_subset(const RootSystem& sys, int node);

// Resolve a label such as "A5+A1" or "D5+T1" against the candidates generated
// by single-vertex deletions and parity involutions. Throws when not found.
RootSubset subset_from_label(const RootSystem& sys, const std::string& label);

std::string canonical_label(const std::string& label);

struct MaxRankSlice {
  std::vector<int> isotropy_roots;  // S ∩ S'
  std::vector<int> slice_roots;     // R \ (S ∪ S')
  std::string isotropy_label;
  long isotropy_dim = 0;  // |S ∩ S'| + rank
};

MaxRankSlice maximal_rank_slice(const RootSystem& sys, const RootSubset& s,
                                const RootSubset& s2);

// Weyl dimension formula, exact: prod_{a>0} <l+rho, a^vee> / <rho, a^vee>.
// weight is in Dynkin labels (fundamental-weight coordinates).
unsigned long long weyl_dimension(char type, int rank,
                                  const std::vector<long>& weight);

// Label (component types + torus deficit) of an arbitrary symmetric closed
// subset given by root indices.
std::string subset_label(const RootSystem& sys, const std::vector<int>& members);

long dim_of_simple(char type, int rank);  // |roots| + rank

}  // namespace polar::rootsys
