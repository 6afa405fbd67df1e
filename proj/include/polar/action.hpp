// The polarity engine: orbit tangent/normal spaces at sampled points,
// cohomogeneity, the Lie-algebra polarity criterion, dimension-bound audits,
// and orbit-equivalence evidence.
#pragma once

#include "polar/symspace.hpp"

namespace polar::action {

struct GroupAction {
  symspace::SymmetricPair pair;
  liealg::MatrixLieAlgebra h;
  uint64_t seed = 1;
  int samples = 8;
};

// Validates h ⊆ g and bracket closure; throws on violation.
GroupAction make_action(symspace::SymmetricPair pair, liealg::MatrixLieAlgebra h,
                        uint64_t seed = 1, int samples = 8);

// Projection onto p of Ad(g^-1) h.
linalg::Subspace orbit_tangent(const GroupAction& action, const Mat& g_elt);

// Dimension of the orbit tangent only (cheaper than orbit_tangent).
int orbit_dim(const GroupAction& action, const Mat& g_elt);

struct CohomResult {
  int value = -1;
  bool conclusive = false;
  std::vector<int> orbit_dims;  // per sample
};

CohomResult cohomogeneity(const GroupAction& action);

enum class Verdict { polar_hyperpolar, polar_nonflat_candidate, non_polar, inconclusive };

std::string verdict_name(Verdict v);

struct PolarityReport {
  int cohomogeneity = -1;
  Verdict verdict = Verdict::inconclusive;
  double lie_triple_residual = 0.0;
  double orthogonality_residual = 0.0;
  double flatness_residual = 0.0;
  int samples_used = 0;
  uint64_t seed = 0;
  // per regular sample
  std::vector<double> sample_lie, sample_orth, sample_flat;
  // smallest over regular samples of max(lie, orth); > reject for non_polar
  double min_violation = 0.0;
};

struct Tolerances {
  double accept = 1e-6;
  double reject = 1e-3;
};

PolarityReport check_polar(const GroupAction& action, Tolerances tol = {});

// Criterion at the base point eK. Requires the orbit through eK to have
// principal dimension; for a fixed origin (h ⊆ k) tests the maximal abelian
// candidate instead; otherwise inconclusive.
PolarityReport check_polar_at_origin(const GroupAction& action, Tolerances tol = {});

struct BoundCheck {
  std::string name;
  long required = 0;
  long measured = 0;
  bool is_upper_bound = false;  // bound on cohomogeneity instead of dim h
  bool violated = false;
};

struct DimensionAudit {
  std::vector<BoundCheck> checks;
  bool any_violation = false;  // violation => the action cannot be polar
};

DimensionAudit dimension_audit(const GroupAction& action);

struct OrbitsMatchResult {
  bool match = false;
  int coh_a = -1, coh_b = -1;
  double max_angle_gap = 0.0;  // sine of the largest principal angle seen
  int samples = 0;
};

// Necessary-condition evidence for orbit equivalence: equal cohomogeneity and
// equal orbit tangents at shared sample points.
OrbitsMatchResult orbits_match(const GroupAction& a, const GroupAction& b,
                               double angle_tol = 1e-6);

// h1 ∩ p for a second involution commuting with the pair's. Returns the
// subspace and the Lie-triple verdict+residual.
struct CommutingInvolutionOrbit {
  linalg::Subspace tangent;
  bool lie_triple = false;
  double residual = 0.0;
};

CommutingInvolutionOrbit commuting_involution_orbit(
    const symspace::SymmetricPair& pair, const liealg::MatrixLieAlgebra& h1,
    const Mat& tau);

}  // namespace polar::action
