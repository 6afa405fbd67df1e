// Shared basics: matrix aliases, error types, deterministic RNG, and the
// serial/parallel execution switch used by the kernels.
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace polar {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

inline constexpr double kDefaultTol = 1e-9;

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct DimensionMismatch : Error {
  explicit DimensionMismatch(const std::string& what) : Error(what) {}
};

// Raised when a multi-seed probabilistic computation does not stabilize.
struct Inconclusive : Error {
  std::vector<long> observed;
  Inconclusive(const std::string& what, std::vector<long> values)
      : Error(what), observed(std::move(values)) {}
};

enum class Exec { Serial, Parallel };

// Process-wide default execution policy for the kernels.
Exec default_exec();
void set_default_exec(Exec e);

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline uint64_t mix_seed(uint64_t a, uint64_t b) {
  return splitmix64(a ^ splitmix64(b + 0x632be59bd9b4e019ULL));
}

// Deterministic normal/uniform source. Box-Muller on top of splitmix64 so the
// stream is pinned independent of the standard library's distributions.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(splitmix64(seed ^ 0xd1b54a32d192ed03ULL)) {}

  double uniform() {  // [0, 1)
    state_ = splitmix64(state_);
    return static_cast<double>(state_ >> 11) * 0x1.0p-53;
  }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do { u1 = uniform(); } while (u1 <= 0.0);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  Vec normal_vector(int n) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = normal();
    return v;
  }

 private:
  uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Row-major flattening of square matrices; the Frobenius pairing on the
// flattened vectors is the inner product used everywhere.
inline Vec vec_rowmajor(const Mat& m) {
  Vec v(m.rows() * m.cols());
  int idx = 0;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) v[idx++] = m(i, j);
  return v;
}

inline Mat unvec_rowmajor(const Vec& v, int n) {
  if (v.size() != static_cast<long>(n) * n)
    throw DimensionMismatch("unvec: vector length is not n*n");
  Mat m(n, n);
  int idx = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = v[idx++];
  return m;
}

inline Mat bracket(const Mat& x, const Mat& y) { return x * y - y * x; }

}  // namespace polar
