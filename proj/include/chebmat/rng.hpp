#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace chebmat {

/// Deterministic random stream. All randomness in the library flows through
/// this class so that a recorded seed reproduces a run bit-for-bit within one
/// build; the Gaussian sampler is hand-rolled (Box-Muller) because
/// std::normal_distribution is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform double in (0, 1].
  double uniform01();

  /// Standard normal deviate.
  double gaussian();

  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  bool have_cached_ = false;
  double cached_ = 0.0;
};

/// Sub-seed derivation: splitmix64 of (seed ^ stream). This is the fixed
/// splitting rule recorded in run manifests.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// k x b matrix of iid standard normals.
Eigen::MatrixXd gaussian_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols);

/// Haar-distributed random orthogonal matrix (QR of a Gaussian matrix with
/// the sign convention R_ii > 0, which makes the result unique).
Eigen::MatrixXd random_orthogonal(Rng& rng, Eigen::Index k);

}  // namespace chebmat
