#include "polar/symspace.hpp"

#include <sstream>

#include "polar/kernels.hpp"

namespace polar::symspace {

using liealg::Family;
using liealg::MatrixLieAlgebra;

std::string space_label(const SpaceId& id) {
  std::ostringstream os;
  switch (id.type) {
    case SpaceType::AI: os << "AI(" << id.p << ")"; break;
    case SpaceType::AII: os << "AII(" << id.p << ")"; break;
    case SpaceType::AIII: os << "AIII(" << id.p << "," << id.q << ")"; break;
    case SpaceType::BDI: os << "BDI(" << id.p << "," << id.q << ")"; break;
    case SpaceType::CI: os << "CI(" << id.p << ")"; break;
    case SpaceType::CII: os << "CII(" << id.p << "," << id.q << ")"; break;
    case SpaceType::DIII: os << "DIII(" << id.p << ")"; break;
  }
  if (id.outer) os << "'";
  return os.str();
}

SpaceId parse_space(const std::string& text) {
  std::string name, rest;
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw Error("parse_space: expected TYPE:params");
  name = text.substr(0, colon);
  rest = text.substr(colon + 1);
  SpaceId id;
  if (!rest.empty() && rest.back() == '\'') {
    id.outer = true;
    rest.pop_back();
  }
  if (name == "AI") id.type = SpaceType::AI;
  else if (name == "AII") id.type = SpaceType::AII;
  else if (name == "AIII") id.type = SpaceType::AIII;
  else if (name == "BDI") id.type = SpaceType::BDI;
  else if (name == "CI") id.type = SpaceType::CI;
  else if (name == "CII") id.type = SpaceType::CII;
  else if (name == "DIII") id.type = SpaceType::DIII;
  else throw Error("parse_space: unknown type " + name);
  std::istringstream is(rest);
  char comma = 0;
  if (!(is >> id.p)) throw Error("parse_space: bad parameters in " + text);
  if (is >> comma >> id.q) {
    if (comma != ',') throw Error("parse_space: bad separator in " + text);
  }
  return id;
}

long table_dim(const SpaceId& id) {
  const long n = id.p, p = id.p, q = id.q;
  switch (id.type) {
    case SpaceType::AI: return (n - 1) * (n + 2) / 2;
    case SpaceType::AII: return (n - 1) * (2 * n + 1);
    case SpaceType::AIII: return 2 * p * q;
    case SpaceType::BDI: return p * q;
    case SpaceType::CI: return n * (n + 1);
    case SpaceType::CII: return 4 * p * q;
    case SpaceType::DIII: return n * (n - 1);
  }
  return 0;
}

int table_rank(const SpaceId& id) {
  switch (id.type) {
    case SpaceType::AI: return id.p - 1;
    case SpaceType::AII: return id.p - 1;
    case SpaceType::AIII: return std::min(id.p, id.q);
    case SpaceType::BDI: return std::min(id.p, id.q);
    case SpaceType::CI: return id.p;
    case SpaceType::CII: return std::min(id.p, id.q);
    case SpaceType::DIII: return id.p / 2;
  }
  return 0;
}

int realified_ambient(const SpaceId& id) {
  switch (id.type) {
    case SpaceType::AI: return 2 * id.p;
    case SpaceType::AII: return 4 * id.p;
    case SpaceType::AIII: return 2 * (id.p + id.q);
    case SpaceType::BDI: return id.p + id.q;
    case SpaceType::CI: return 4 * id.p;
    case SpaceType::CII: return 4 * (id.p + id.q);
    case SpaceType::DIII: return 2 * id.p;
  }
  return 0;
}

namespace {

// Real diagonal with +1 on the first (mult*p) and -1 on the rest.
Mat signature_matrix(int total, int plus) {
  Mat s = Mat::Identity(total, total);
  for (int i = plus; i < total; ++i) s(i, i) = -1;
  return s;
}

// Conjugation matrix realizing entrywise complex conjugation on realified
// complex matrices: diag(1,-1) per complex coordinate.
Mat conj_matrix(int n) {
  Mat c = Mat::Identity(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) c(2 * i + 1, 2 * i + 1) = -1;
  return c;
}

}  // namespace

SymmetricPair build_symmetric_pair(const SpaceId& id) {
  SymmetricPair pair;
  pair.id = id;
  pair.label = space_label(id);
  using liealg::realify_complex;
  using liealg::realify_quaternion;
  using CMat = Eigen::MatrixXcd;

  switch (id.type) {
    case SpaceType::AI: {
      if (id.p < 2) throw Error("AI(n): n >= 2");
      pair.g = liealg::build_classical(Family::su, id.p);
      pair.theta = conj_matrix(id.p);
      break;
    }
    case SpaceType::AII: {
      if (id.p < 1) throw Error("AII(n): n >= 1");
      pair.g = liealg::build_classical(Family::su, 2 * id.p);
      CMat j = CMat::Zero(2 * id.p, 2 * id.p);
      j.topRightCorner(id.p, id.p) = -CMat::Identity(id.p, id.p);
      j.bottomLeftCorner(id.p, id.p) = CMat::Identity(id.p, id.p);
      pair.theta = realify_complex(j) * conj_matrix(2 * id.p);
      break;
    }
    case SpaceType::AIII: {
      if (id.p < 1 || id.q < 1) throw Error("AIII(p,q): p,q >= 1");
      pair.g = liealg::build_classical(Family::su, id.p + id.q);
      CMat s = CMat::Identity(id.p + id.q, id.p + id.q);
      for (int i = id.p; i < id.p + id.q; ++i) s(i, i) = -1;
      pair.theta = realify_complex(s);
      break;
    }
    case SpaceType::BDI: {
      if (id.p < 1 || id.q < 1) throw Error("BDI(p,q): p,q >= 1");
      pair.g = liealg::build_classical(Family::so, id.p + id.q);
      pair.theta = signature_matrix(id.p + id.q, id.p);
      break;
    }
    case SpaceType::CI: {
      if (id.p < 1) throw Error("CI(n): n >= 1");
      pair.g = liealg::build_classical(Family::sp, id.p);
      liealg::QuatMat i_mat = liealg::QuatMat::zero(id.p, id.p);
      i_mat.b = Mat::Identity(id.p, id.p);
      pair.theta = realify_quaternion(i_mat);
      break;
    }
    case SpaceType::CII: {
      if (id.p < 1 || id.q < 1) throw Error("CII(p,q): p,q >= 1");
      pair.g = liealg::build_classical(Family::sp, id.p + id.q);
      liealg::QuatMat s = liealg::QuatMat::zero(id.p + id.q, id.p + id.q);
      s.a = signature_matrix(id.p + id.q, id.p);
      pair.theta = realify_quaternion(s);
      break;
    }
    case SpaceType::DIII: {
      if (id.p < 2) throw Error("DIII(n): n >= 2");
      pair.g = liealg::build_classical(Family::so, 2 * id.p);
      pair.theta = liealg::complex_structure(id.p);
      break;
    }
  }

  if (id.outer) {
    if (id.type != SpaceType::DIII)
      throw Error("outer involution twist only supported for DIII");
    Mat a = Mat::Identity(pair.g.ambient_n, pair.g.ambient_n);
    a(pair.g.ambient_n - 1, pair.g.ambient_n - 1) = -1;
    pair.theta = a * pair.theta * a;
  }

  // sanity: theta orthogonal and theta^2 = +-I
  const int n = pair.g.ambient_n;
  if ((pair.theta * pair.theta.transpose() - Mat::Identity(n, n)).norm() > 1e-10)
    throw Error(pair.label + ": involution matrix not orthogonal");
  const Mat t2 = pair.theta * pair.theta;
  if (std::min((t2 - Mat::Identity(n, n)).norm(), (t2 + Mat::Identity(n, n)).norm()) > 1e-10)
    throw Error(pair.label + ": involution matrix does not square to +-I");

  // Cartan split: eigenspaces of X -> theta X theta^-1
  const Mat theta_inv = pair.theta.transpose();
  std::vector<Vec> kvecs, pvecs;
  for (int i = 0; i < pair.g.dim(); ++i) {
    const Mat x = pair.g.matrix(i);
    const Mat tx = pair.theta * x * theta_inv;
    kvecs.push_back(vec_rowmajor(0.5 * (x + tx)));
    pvecs.push_back(vec_rowmajor(0.5 * (x - tx)));
  }
  const long amb = static_cast<long>(n) * n;
  pair.k = linalg::orthonormalize(kvecs, amb);
  pair.p = linalg::orthonormalize(pvecs, amb);

  if (pair.k.dim() + pair.p.dim() != pair.g.dim())
    throw Error(pair.label + ": Cartan split dimensions do not add up");
  if (pair.dim_p() != table_dim(id))
    throw Error(pair.label + ": dim p = " + std::to_string(pair.dim_p()) +
                " but table says " + std::to_string(table_dim(id)));
  return pair;
}

std::pair<bool, double> is_lie_triple(const linalg::Subspace& nu,
                                      const SymmetricPair& pair, double accept) {
  for (long i = 0; i < nu.dim(); ++i) {
    const double r = linalg::membership_residual(nu.basis.col(i), pair.p);
    if (r > 1e-6)
      throw Error("is_lie_triple: nu is not inside p (residual " + std::to_string(r) + ")");
  }
  const double res = kernels::lie_triple_residual(nu.basis, pair.ambient_n());
  return {res < accept, res};
}

int space_rank(const SymmetricPair& pair, int seeds) {
  std::vector<long> values;
  for (int s = 0; s < seeds; ++s) {
    Rng rng(mix_seed(0x5bace, static_cast<uint64_t>(s) * 2654435761ULL + 3));
    Vec c = rng.normal_vector(static_cast<int>(pair.p.dim()));
    Vec flat = pair.p.basis * c;
    flat /= flat.norm();
    values.push_back(liealg::centralizer_dim_in(pair.p, unvec_rowmajor(flat, pair.ambient_n()),
                                                pair.ambient_n()));
  }
  for (long v : values)
    if (v != values[0])
      throw Inconclusive("space_rank: seeds disagree for " + pair.label, values);
  return static_cast<int>(values[0]);
}

liealg::MatrixLieAlgebra k_algebra(const SymmetricPair& pair) {
  return liealg::algebra_from_subspace(pair.k, pair.ambient_n(), pair.label + ".k");
}

int section_dim_bound(const SymmetricPair& pair) {
  return liealg::algebra_rank(pair.g) + liealg::algebra_rank(k_algebra(pair));
}

linalg::Subspace maximal_abelian_in_p(const SymmetricPair& pair, uint64_t seed) {
  // Centralizer in p of a generic element of p.
  Rng rng(mix_seed(seed, 0xabe1));
  Vec c = rng.normal_vector(static_cast<int>(pair.p.dim()));
  Vec flat = pair.p.basis * c;
  flat /= flat.norm();
  const Mat z = unvec_rowmajor(flat, pair.ambient_n());
  const Mat ad = kernels::ad_action_matrix(z, pair.p.basis, pair.ambient_n());
  const Mat null = linalg::null_space(ad, 1e-7);
  Mat vecs = pair.p.basis * null;
  linalg::Subspace a = linalg::orthonormalize(vecs, pair.p.tol);
  a.tol = pair.p.tol;
  return a;
}

double involution_residual(const SymmetricPair& pair) {
  const Mat ti = pair.theta.transpose();
  double worst = 0.0;
  for (long i = 0; i < pair.k.dim(); ++i) {
    const Mat x = unvec_rowmajor(pair.k.basis.col(i), pair.ambient_n());
    worst = std::max(worst, (pair.theta * x * ti - x).norm());
  }
  for (long i = 0; i < pair.p.dim(); ++i) {
    const Mat x = unvec_rowmajor(pair.p.basis.col(i), pair.ambient_n());
    worst = std::max(worst, (pair.theta * x * ti + x).norm());
  }
  return worst;
}

double cartan_residual(const SymmetricPair& pair, int max_pairs, uint64_t seed) {
  const int n = pair.ambient_n();
  Rng rng(mix_seed(seed, 0xca27a));
  auto sample = [&](const linalg::Subspace& a, const linalg::Subspace& b,
                    const linalg::Subspace& target) {
    if (a.dim() == 0 || b.dim() == 0) return 0.0;
    double worst = 0.0;
    for (int s = 0; s < max_pairs; ++s) {
      const long i = static_cast<long>(rng.uniform() * a.dim());
      const long j = static_cast<long>(rng.uniform() * b.dim());
      const Mat x = unvec_rowmajor(a.basis.col(std::min(i, a.dim() - 1)), n);
      const Mat y = unvec_rowmajor(b.basis.col(std::min(j, b.dim() - 1)), n);
      const Vec br = vec_rowmajor(bracket(x, y));
      const double norm = br.norm();
      if (norm < 1e-12) continue;
      const Vec res = br - target.basis * (target.basis.transpose() * br);
      worst = std::max(worst, res.norm() / norm);
    }
    return worst;
  };
  double worst = sample(pair.k, pair.k, pair.k);
  worst = std::max(worst, sample(pair.k, pair.p, pair.p));
  worst = std::max(worst, sample(pair.p, pair.p, pair.k));
  return worst;
}

std::vector<SpaceId> catalog(int max_ambient) {
  std::vector<SpaceId> out;
  auto add = [&](SpaceId id) {
    if (realified_ambient(id) <= max_ambient && table_rank(id) >= 1 && table_dim(id) >= 1)
      out.push_back(id);
  };
  for (int n = 2; 2 * n <= max_ambient; ++n) add({SpaceType::AI, n});
  for (int n = 2; 4 * n <= max_ambient; ++n) add({SpaceType::AII, n});
  for (int p = 1; p <= max_ambient; ++p)
    for (int q = p; 2 * (p + q) <= max_ambient; ++q) add({SpaceType::AIII, p, q});
  for (int p = 1; p <= max_ambient; ++p)
    for (int q = p; p + q <= max_ambient; ++q) {
      if (p + q < 3) continue;  // so(2) is abelian
      add({SpaceType::BDI, p, q});
    }
  for (int n = 1; 4 * n <= max_ambient; ++n) add({SpaceType::CI, n});
  for (int p = 1; p <= max_ambient; ++p)
    for (int q = p; 4 * (p + q) <= max_ambient; ++q) add({SpaceType::CII, p, q});
  for (int n = 2; 2 * n <= max_ambient; ++n) add({SpaceType::DIII, n});
  return out;
}

}  // namespace polar::symspace
