#include "polar/slicerep.hpp"

#include <Eigen/Eigenvalues>

#include "polar/kernels.hpp"

namespace polar::slicerep {

using linalg::Subspace;

liealg::MatrixLieAlgebra isotropy_subalgebra(const action::GroupAction& act,
                                             const Mat& g_elt) {
  const int n = act.pair.ambient_n();
  const Subspace moved = liealg::adjoint_transport(g_elt.transpose(), act.h.basis, n);
  const Subspace iso = linalg::intersect(moved, act.pair.k);
  liealg::MatrixLieAlgebra alg =
      liealg::algebra_from_subspace(iso, n, act.h.label + "_iso");
  return alg;
}

namespace {

LinearRep rep_on_carrier(const symspace::SymmetricPair& pair,
                         liealg::MatrixLieAlgebra iso, Subspace carrier) {
  LinearRep rep;
  const int n = pair.ambient_n();
  rep.action.reserve(static_cast<size_t>(iso.dim()));
  for (int i = 0; i < iso.dim(); ++i) {
    const Mat x = iso.matrix(i);
    // bracket against carrier basis, projected back to the carrier frame
    const Mat img = kernels::ad_action_matrix(x, carrier.basis, n);
    rep.action.push_back(kernels::coeffs(carrier.basis, img));
  }
  rep.algebra = std::move(iso);
  rep.carrier = std::move(carrier);
  return rep;
}

}  // namespace

LinearRep slice_representation(const action::GroupAction& act, const Mat& g_elt) {
  const Subspace tangent = action::orbit_tangent(act, g_elt);
  const Subspace carrier = linalg::complement_within(act.pair.p, tangent);
  return rep_on_carrier(act.pair, isotropy_subalgebra(act, g_elt), carrier);
}

LinearRep isotropy_representation(const symspace::SymmetricPair& pair,
                                  const liealg::MatrixLieAlgebra& subalg_of_k) {
  for (int i = 0; i < subalg_of_k.dim(); ++i) {
    const double r = linalg::membership_residual(subalg_of_k.basis.basis.col(i), pair.k);
    if (r > 1e-8) throw Error("isotropy_representation: algebra is not inside k");
  }
  return rep_on_carrier(pair, subalg_of_k, pair.p);
}

LinearRep make_rep(liealg::MatrixLieAlgebra algebra, std::vector<Mat> action_matrices) {
  if (static_cast<int>(action_matrices.size()) != algebra.dim())
    throw DimensionMismatch("make_rep: one action matrix per basis element");
  LinearRep rep;
  const long d = action_matrices.empty() ? 0 : action_matrices.front().rows();
  rep.algebra = std::move(algebra);
  rep.carrier = linalg::orthonormalize(Mat::Identity(d, d), kDefaultTol);
  rep.action = std::move(action_matrices);
  return rep;
}

double homomorphism_residual(const LinearRep& rep, int max_pairs, uint64_t seed) {
  const int m = static_cast<int>(rep.action.size());
  if (m < 2 || rep.carrier_dim() == 0) return 0.0;
  Rng rng(mix_seed(seed, 0x40f));
  double worst = 0.0;
  const int total = m * (m - 1) / 2;
  const int trials = std::min(max_pairs, total);
  const int n = rep.algebra.ambient_n;
  for (int t = 0; t < trials; ++t) {
    int i, j;
    if (total <= max_pairs) {
      // exhaustive
      int idx = t, a = 0;
      while (idx >= m - 1 - a) { idx -= m - 1 - a; ++a; }
      i = a;
      j = a + 1 + idx;
    } else {
      i = static_cast<int>(rng.uniform() * m);
      j = static_cast<int>(rng.uniform() * m);
      if (i == j) j = (j + 1) % m;
    }
    const Mat xi = rep.algebra.matrix(i), xj = rep.algebra.matrix(j);
    const Vec br = vec_rowmajor(bracket(xi, xj));
    const Vec c = rep.algebra.basis.basis.transpose() * br;
    const double out_of_algebra = (br - rep.algebra.basis.basis * c).norm();
    Mat expected = Mat::Zero(rep.carrier_dim(), rep.carrier_dim());
    for (int k = 0; k < rep.algebra.dim(); ++k) expected += c[k] * rep.action[static_cast<size_t>(k)];
    const Mat got = bracket(rep.action[static_cast<size_t>(i)], rep.action[static_cast<size_t>(j)]);
    const double scale = std::max(1.0, got.norm());
    worst = std::max(worst, ((got - expected).norm() + out_of_algebra) / scale);
    (void)n;
  }
  return worst;
}

namespace {

// Kernel basis of a PSD operator at a relative eigenvalue threshold.
Mat psd_kernel(const Mat& op, double rel_tol) {
  Eigen::SelfAdjointEigenSolver<Mat> es(op);
  const Vec ev = es.eigenvalues();
  const double top = std::max(ev.cwiseAbs().maxCoeff(), 1e-300);
  std::vector<long> keep;
  for (long i = 0; i < ev.size(); ++i)
    if (ev[i] < rel_tol * top) keep.push_back(i);
  Mat out(op.rows(), static_cast<long>(keep.size()));
  for (size_t j = 0; j < keep.size(); ++j)
    out.col(static_cast<long>(j)) = es.eigenvectors().col(keep[j]);
  return out;
}

double invariance_residual(const LinearRep& rep, const Mat& summand) {
  double worst = 0.0;
  for (const Mat& x : rep.action) {
    const Mat img = x * summand;
    const double scale = std::max(img.norm(), 1e-12);
    const Mat res = img - summand * (summand.transpose() * img);
    worst = std::max(worst, res.norm() / scale);
  }
  return worst;
}

}  // namespace

Decomposition decompose_modules(const LinearRep& rep, uint64_t seed) {
  Decomposition dec;
  const long d = rep.carrier_dim();
  if (d == 0) return dec;
  if (rep.algebra.dim() == 0) {
    dec.trivial_dim = static_cast<int>(d);
    dec.commutant_dim = static_cast<int>(d * d);
    dec.summands.push_back(Mat::Identity(d, d));
    return dec;
  }

  // Pointwise-fixed part: kernel of sum rho(X)^T rho(X).
  Mat k0 = Mat::Zero(d, d);
  for (const Mat& x : rep.action) k0 += x.transpose() * x;
  const Mat trivial = psd_kernel(k0, 1e-10);
  dec.trivial_dim = static_cast<int>(trivial.cols());

  // Restrict to the orthogonal complement of the trivial part.
  Mat restrict_basis;
  if (dec.trivial_dim == 0) {
    restrict_basis = Mat::Identity(d, d);
  } else {
    Mat residual = Mat::Identity(d, d) - trivial * trivial.transpose();
    restrict_basis = linalg::orthonormalize(residual, 1e-8).basis;
  }
  const long dn = restrict_basis.cols();
  if (dn == 0) {
    dec.commutant_dim = static_cast<int>(d * d);
    if (dec.trivial_dim > 0) dec.summands.push_back(trivial);
    return dec;
  }
  std::vector<Mat> rho;
  rho.reserve(rep.action.size());
  for (const Mat& x : rep.action)
    rho.push_back(restrict_basis.transpose() * x * restrict_basis);

  // Commutant: kernels of the Casimir-type operator on Sym and Antisym.
  const Mat op_sym = kernels::commutant_operator(rho, true);
  const Mat op_asym = dn >= 2 ? kernels::commutant_operator(rho, false) : Mat::Zero(0, 0);
  const Mat ker_sym = psd_kernel(op_sym, 1e-10);
  const Mat ker_asym = op_asym.size() ? psd_kernel(op_asym, 1e-10) : Mat::Zero(0, 0);
  // The trivial block contributes a full gl factor.
  dec.commutant_dim = static_cast<int>(ker_sym.cols() + ker_asym.cols()) +
                      dec.trivial_dim * dec.trivial_dim;

  // Random symmetric commutant element; eigenspaces are invariant subspaces.
  const Mat sym = kernels::sym_basis(static_cast<int>(dn));
  Rng rng(mix_seed(seed, 0xdec0));
  if (ker_sym.cols() == 0)
    throw Error("decompose_modules: empty symmetric commutant (identity missing)");
  const Vec coef = rng.normal_vector(static_cast<int>(ker_sym.cols()));
  const Vec flat = sym * (ker_sym * coef);  // kernel vectors live in sym coordinates
  Mat t = unvec_rowmajor(flat, static_cast<int>(dn));
  t = 0.5 * (t + t.transpose());
  Eigen::SelfAdjointEigenSolver<Mat> es(t);
  const Vec ev = es.eigenvalues();
  const double spread = std::max(ev.maxCoeff() - ev.minCoeff(), 1e-12);
  std::vector<std::pair<long, long>> clusters;  // [begin, end)
  long begin = 0;
  for (long i = 1; i <= dn; ++i) {
    if (i == dn || ev[i] - ev[i - 1] > 1e-6 * spread) {
      clusters.emplace_back(begin, i);
      begin = i;
    }
  }
  for (const auto& [b, e] : clusters) {
    Mat w = restrict_basis * es.eigenvectors().middleCols(b, e - b);
    dec.max_invariance_residual =
        std::max(dec.max_invariance_residual, invariance_residual(rep, w));
    dec.dims.push_back(static_cast<int>(e - b));
    dec.summands.push_back(std::move(w));
  }
  std::sort(dec.dims.rbegin(), dec.dims.rend());
  if (dec.trivial_dim > 0) dec.summands.push_back(trivial);
  dec.conclusive = dec.max_invariance_residual < 1e-7;
  return dec;
}

bool has_equivalent_pair(const LinearRep& rep, const Decomposition& dec,
                         double rel_tol) {
  // Nontrivial summands are all but the last when a trivial block exists.
  const size_t n_nontrivial = dec.summands.size() - (dec.trivial_dim > 0 ? 1 : 0);
  for (size_t a = 0; a < n_nontrivial; ++a)
    for (size_t b = a + 1; b < n_nontrivial; ++b) {
      const Mat& u = dec.summands[a];
      const Mat& w = dec.summands[b];
      std::vector<Mat> rho_u, rho_w;
      for (const Mat& x : rep.action) {
        rho_u.push_back(u.transpose() * x * u);
        rho_w.push_back(w.transpose() * x * w);
      }
      const Mat op = kernels::intertwiner_operator(rho_u, rho_w);
      Eigen::SelfAdjointEigenSolver<Mat> es(op, Eigen::EigenvaluesOnly);
      const Vec ev = es.eigenvalues();
      const double top = std::max(ev.cwiseAbs().maxCoeff(), 1e-300);
      if (ev.minCoeff() < rel_tol * top) return true;
    }
  return false;
}

int rep_cohomogeneity(const LinearRep& rep, uint64_t seed, int samples) {
  const long d = rep.carrier_dim();
  if (d == 0) return 0;
  int best = 0;
  for (int s = 0; s < samples; ++s) {
    Rng rng(mix_seed(seed, 0xbeef + static_cast<uint64_t>(s)));
    Vec v = rng.normal_vector(static_cast<int>(d));
    v /= v.norm();
    Mat orbit(d, static_cast<long>(rep.action.size()));
    for (size_t i = 0; i < rep.action.size(); ++i) orbit.col(static_cast<long>(i)) = rep.action[i] * v;
    best = std::max(best, linalg::numeric_rank(orbit, 1e-8));
  }
  return static_cast<int>(d) - best;
}

}  // namespace polar::slicerep
