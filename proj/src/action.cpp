#include "polar/action.hpp"

#include "polar/kernels.hpp"

namespace polar::action {

using linalg::Subspace;

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::polar_hyperpolar: return "polar_hyperpolar";
    case Verdict::polar_nonflat_candidate: return "polar_nonflat_candidate";
    case Verdict::non_polar: return "non_polar";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

GroupAction make_action(symspace::SymmetricPair pair, liealg::MatrixLieAlgebra h,
                        uint64_t seed, int samples) {
  if (h.ambient_n != pair.ambient_n())
    throw DimensionMismatch("make_action: h lives in a different ambient");
  for (int i = 0; i < h.dim(); ++i) {
    const double r = linalg::membership_residual(h.basis.basis.col(i), pair.g.basis);
    if (r > 1e-8)
      throw Error("make_action: h is not contained in g (residual " +
                  std::to_string(r) + ")");
  }
  GroupAction a{std::move(pair), std::move(h), seed, samples};
  return a;
}

namespace {

// Coefficients of Ad(g^-1) h against the orthonormal basis of p.
Mat tangent_coeffs(const GroupAction& action, const Mat& g_elt) {
  const int n = action.pair.ambient_n();
  if ((g_elt * g_elt.transpose() - Mat::Identity(n, n)).norm() > 1e-8)
    throw Error("orbit_tangent: group element not orthogonal");
  const Mat g_inv = g_elt.transpose();
  std::vector<Mat> mats = action.h.matrices();
  std::vector<Mat> moved;
  kernels::conjugate_all(g_inv, g_elt, mats, moved);
  Mat flat(action.pair.p.ambient_dim, static_cast<long>(moved.size()));
  for (size_t i = 0; i < moved.size(); ++i)
    flat.col(static_cast<long>(i)) = vec_rowmajor(moved[i]);
  return kernels::coeffs(action.pair.p.basis, flat);
}

}  // namespace

Subspace orbit_tangent(const GroupAction& action, const Mat& g_elt) {
  if (action.h.dim() == 0) return Subspace::zero(action.pair.p.ambient_dim);
  const Mat c = tangent_coeffs(action, g_elt);
  // orthonormalize in p-coordinates (4x cheaper), then map back
  const linalg::Subspace span_c = linalg::orthonormalize(c, 1e-8);
  Subspace out;
  out.ambient_dim = action.pair.p.ambient_dim;
  out.basis = action.pair.p.basis * span_c.basis;
  out.tol = 1e-8;
  return out;
}

int orbit_dim(const GroupAction& action, const Mat& g_elt) {
  if (action.h.dim() == 0) return 0;
  return linalg::numeric_rank(tangent_coeffs(action, g_elt), 1e-8);
}

namespace {

struct SampleSet {
  std::vector<Mat> elements;
  std::vector<Subspace> tangents;
  std::vector<int> dims;
  int max_dim = 0;
  std::vector<int> regular;  // indices attaining max_dim
};

SampleSet collect_samples(const GroupAction& action, int count, int round) {
  SampleSet s;
  for (int i = 0; i < count; ++i) {
    const uint64_t seed =
        mix_seed(action.seed, static_cast<uint64_t>(round) * 100003 + static_cast<uint64_t>(i));
    Mat g = liealg::group_element(action.pair.g, seed, 2);
    Subspace t = orbit_tangent(action, g);
    s.dims.push_back(static_cast<int>(t.dim()));
    s.elements.push_back(std::move(g));
    s.tangents.push_back(std::move(t));
  }
  s.max_dim = 0;
  for (int d : s.dims) s.max_dim = std::max(s.max_dim, d);
  for (size_t i = 0; i < s.dims.size(); ++i)
    if (s.dims[i] == s.max_dim) s.regular.push_back(static_cast<int>(i));
  return s;
}

}  // namespace

CohomResult cohomogeneity(const GroupAction& action) {
  CohomResult r;
  int max_dim = 0, hits = 0;
  for (int i = 0; i < action.samples; ++i) {
    const uint64_t seed = mix_seed(action.seed, static_cast<uint64_t>(i));
    const Mat g = liealg::group_element(action.pair.g, seed, 2);
    const int d = orbit_dim(action, g);
    r.orbit_dims.push_back(d);
    max_dim = std::max(max_dim, d);
  }
  for (int d : r.orbit_dims)
    if (d == max_dim) ++hits;
  r.value = static_cast<int>(action.pair.dim_p()) - max_dim;
  r.conclusive = hits >= 2;
  return r;
}

namespace {

// Per-sample polarity data at a regular point.
struct SampleResiduals {
  double lie = 0.0, orth = 0.0, flat = 0.0;
};

SampleResiduals residuals_at(const GroupAction& action, const Mat& g_elt,
                             const Subspace& tangent) {
  SampleResiduals out;
  const int n = action.pair.ambient_n();
  const Subspace nu = linalg::complement_within(action.pair.p, tangent);
  out.lie = kernels::lie_triple_residual(nu.basis, n);
  out.flat = kernels::max_pair_bracket_norm(nu.basis, n);
  // s = nu + [nu, nu]; orthogonality against Ad(g^-1) h
  Subspace s_alg = nu;
  if (nu.dim() >= 2) {
    const Mat br = kernels::bracket_pairs(nu.basis, n);
    Mat joined(nu.basis.rows(), nu.dim() + br.cols());
    joined << nu.basis, br;
    s_alg = linalg::orthonormalize(joined, 1e-8);
  }
  const Subspace moved_h =
      liealg::adjoint_transport(g_elt.transpose(), action.h.basis, n);
  out.orth = kernels::max_abs_cross_inner(s_alg.basis, moved_h.basis);
  return out;
}

PolarityReport aggregate(const GroupAction& action, const std::vector<SampleResiduals>& rs,
                         int coh, Tolerances tol, uint64_t seed) {
  PolarityReport rep;
  rep.cohomogeneity = coh;
  rep.samples_used = static_cast<int>(rs.size());
  rep.seed = seed;
  if (rs.empty()) {
    rep.verdict = Verdict::inconclusive;
    return rep;
  }
  double min_violation = std::numeric_limits<double>::infinity();
  for (const auto& r : rs) {
    rep.sample_lie.push_back(r.lie);
    rep.sample_orth.push_back(r.orth);
    rep.sample_flat.push_back(r.flat);
    rep.lie_triple_residual = std::max(rep.lie_triple_residual, r.lie);
    rep.orthogonality_residual = std::max(rep.orthogonality_residual, r.orth);
    rep.flatness_residual = std::max(rep.flatness_residual, r.flat);
    min_violation = std::min(min_violation, std::max(r.lie, r.orth));
  }
  rep.min_violation = min_violation;
  if (rep.lie_triple_residual < tol.accept && rep.orthogonality_residual < tol.accept) {
    rep.verdict = rep.flatness_residual < tol.accept ? Verdict::polar_hyperpolar
                                                     : Verdict::polar_nonflat_candidate;
  } else if (min_violation > tol.reject) {
    rep.verdict = Verdict::non_polar;
  } else {
    rep.verdict = Verdict::inconclusive;
  }
  return rep;
}

}  // namespace

PolarityReport check_polar(const GroupAction& action, Tolerances tol) {
  // Regular samples carry the criterion; resample up to 4 batches when fewer
  // than two samples attain the maximal orbit dimension.
  SampleSet samples = collect_samples(action, action.samples, 0);
  for (int round = 1; round < 4 && samples.regular.size() < 2; ++round) {
    SampleSet more = collect_samples(action, action.samples, round);
    for (size_t i = 0; i < more.elements.size(); ++i) {
      samples.elements.push_back(std::move(more.elements[i]));
      samples.tangents.push_back(std::move(more.tangents[i]));
      samples.dims.push_back(more.dims[i]);
    }
    samples.max_dim = 0;
    for (int d : samples.dims) samples.max_dim = std::max(samples.max_dim, d);
    samples.regular.clear();
    for (size_t i = 0; i < samples.dims.size(); ++i)
      if (samples.dims[i] == samples.max_dim) samples.regular.push_back(static_cast<int>(i));
  }
  const int coh = static_cast<int>(action.pair.dim_p()) - samples.max_dim;
  std::vector<SampleResiduals> rs;
  if (samples.regular.size() >= 2) {
    for (int idx : samples.regular)
      rs.push_back(residuals_at(action, samples.elements[static_cast<size_t>(idx)],
                                samples.tangents[static_cast<size_t>(idx)]));
  }
  PolarityReport rep = aggregate(action, rs, coh, tol, action.seed);
  return rep;
}

PolarityReport check_polar_at_origin(const GroupAction& action, Tolerances tol) {
  const int n = action.pair.ambient_n();
  const Mat id = Mat::Identity(n, n);
  const Subspace tangent0 = orbit_tangent(action, id);
  const CohomResult coh = cohomogeneity(action);
  const int max_dim = static_cast<int>(action.pair.dim_p()) - coh.value;

  if (static_cast<int>(tangent0.dim()) == max_dim) {
    std::vector<SampleResiduals> rs{residuals_at(action, id, tangent0)};
    return aggregate(action, rs, coh.value, tol, action.seed);
  }
  if (tangent0.dim() == 0) {
    // Fixed origin: test the maximal abelian candidate section.
    const Subspace a = symspace::maximal_abelian_in_p(action.pair, action.seed);
    if (static_cast<int>(a.dim()) != coh.value) {
      PolarityReport rep;
      rep.cohomogeneity = coh.value;
      rep.verdict = Verdict::inconclusive;
      rep.seed = action.seed;
      return rep;
    }
    SampleResiduals r;
    r.lie = kernels::lie_triple_residual(a.basis, n);
    r.flat = kernels::max_pair_bracket_norm(a.basis, n);
    r.orth = kernels::max_abs_cross_inner(a.basis, action.h.basis.basis);
    return aggregate(action, {r}, coh.value, tol, action.seed);
  }
  PolarityReport rep;  // singular origin with a positive-dimensional orbit
  rep.cohomogeneity = coh.value;
  rep.verdict = Verdict::inconclusive;
  rep.seed = action.seed;
  return rep;
}

DimensionAudit dimension_audit(const GroupAction& action) {
  using symspace::SpaceType;
  DimensionAudit audit;
  const auto& id = action.pair.id;
  const long d = action.h.dim();
  const long n_amb = id.p + id.q;  // block parameter sum where meaningful

  auto add_lower = [&](const std::string& name, long required) {
    BoundCheck c{name, required, d, false, d < required};
    audit.checks.push_back(c);
  };

  // Lower bounds on dim(H) for polar actions on the classical spaces.
  switch (id.type) {
    case SpaceType::BDI: {
      const long k = std::min(id.p, id.q), n = n_amb;
      if (k >= 3 && k <= n - 3) add_lower("grassmann_real_2n-9", 2 * n - 9);
      break;
    }
    case SpaceType::AIII: {
      const long l = std::min(id.p, id.q), n = n_amb;
      if (l >= 2 && l <= n - 2) add_lower("grassmann_complex_3n-7", 3 * n - 7);
      break;
    }
    case SpaceType::CII: {
      const long l = std::min(id.p, id.q), n = n_amb;
      if (l >= 2 && l <= n - 2) add_lower("grassmann_quaternion_6n-16", 6 * n - 16);
      break;
    }
    case SpaceType::DIII: {
      const long n = 2 * id.p;  // SO(n)/U(n/2), structure space for n >= 10
      if (id.p >= 5) add_lower("structure_so2n_un", n * n / 4 - n);
      break;
    }
    case SpaceType::AI: {
      const long n = id.p;
      if (n >= 3 && n != 4) add_lower("structure_sun_son", n * n / 2 - n);
      break;
    }
    case SpaceType::AII: {
      const long n = 2 * id.p;  // SU(n)/Sp(n/2), structure space for id.p >= 3
      if (id.p >= 3) add_lower("structure_sun_spn", n * n / 2 - 2 * n);
      break;
    }
    case SpaceType::CI: {
      const long n = id.p;
      if (n >= 3) add_lower("structure_spn_un", n * n);
      break;
    }
  }

  const CohomResult coh = cohomogeneity(action);

  // Kaehler bound: cohomogeneity <= rk(H) on Hermitian symmetric spaces.
  const bool hermitian = id.type == SpaceType::AIII || id.type == SpaceType::CI ||
                         id.type == SpaceType::DIII;
  if (hermitian && action.h.dim() > 0) {
    const long rk_h = liealg::algebra_rank(action.h);
    BoundCheck c{"kaehler_coh_le_rank_h", rk_h, coh.value, true, coh.value > rk_h};
    audit.checks.push_back(c);
  }

  // Product-of-spheres bound: cohomogeneity <= rk(G) + rk(K).
  {
    const long bound = symspace::section_dim_bound(action.pair);
    BoundCheck c{"section_le_rkG_plus_rkK", bound, coh.value, true, coh.value > bound};
    audit.checks.push_back(c);
  }

  for (const auto& c : audit.checks) audit.any_violation |= c.violated;
  return audit;
}

OrbitsMatchResult orbits_match(const GroupAction& a, const GroupAction& b,
                               double angle_tol) {
  if (a.pair.ambient_n() != b.pair.ambient_n() || a.pair.label != b.pair.label)
    throw Error("orbits_match: actions live on different spaces");
  OrbitsMatchResult out;
  const CohomResult ca = cohomogeneity(a), cb = cohomogeneity(b);
  out.coh_a = ca.value;
  out.coh_b = cb.value;
  const int count = std::max(8, a.samples);
  out.samples = count;
  double worst = 0.0;
  for (int i = 0; i < count; ++i) {
    const uint64_t seed = mix_seed(a.seed, 777000 + static_cast<uint64_t>(i));
    const Mat g = liealg::group_element(a.pair.g, seed, 2);
    const Subspace ta = orbit_tangent(a, g);
    const Subspace tb = orbit_tangent(b, g);
    if (ta.dim() != tb.dim()) {
      out.match = false;
      out.max_angle_gap = 1.0;
      return out;
    }
    worst = std::max(worst, std::max(linalg::subspace_gap(ta, tb),
                                     linalg::subspace_gap(tb, ta)));
  }
  out.max_angle_gap = worst;
  out.match = (ca.value == cb.value) && worst < angle_tol;
  return out;
}

CommutingInvolutionOrbit commuting_involution_orbit(
    const symspace::SymmetricPair& pair, const liealg::MatrixLieAlgebra& h1,
    const Mat& tau) {
  if ((pair.theta * tau - tau * pair.theta).norm() > 1e-10)
    throw Error("commuting_involution_orbit: involutions do not commute");
  CommutingInvolutionOrbit out;
  out.tangent = linalg::intersect(h1.basis, pair.p);
  if (out.tangent.dim() == 0) {
    out.lie_triple = true;
    out.residual = 0.0;
    return out;
  }
  auto [ok, res] = symspace::is_lie_triple(out.tangent, pair);
  out.lie_triple = ok;
  out.residual = res;
  return out;
}

}  // namespace polar::action
