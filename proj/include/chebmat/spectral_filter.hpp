#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "chebmat/cheb_scalar.hpp"
#include "chebmat/linear_operator.hpp"

namespace chebmat {

/// erf-shaped spectral filter: value 1 near the center, 1/2 exactly at
/// |x - c| = R, falling to 0 outside. `steepness` (r) controls the width of
/// the transition; smaller r is steeper.
struct FilterParams {
  double center = 0.0;
  double half_width = 0.1;
  double steepness = 0.05;
};

double erf_filter(double x, const FilterParams& p);

/// The filter as a ScalarFunction (with closed-form derivatives away from
/// the kink at the center).
ScalarFunction erf_filter_function(const FilterParams& p);

struct RecoveryConfig {
  int degree = 10;            ///< expansion degree N per pass
  int max_passes = 12;
  int block_size = 1;         ///< b; must be >= the expected eigenspace dimension
  double residual_tol = 1e-10;
  double rank_threshold = 1e-8;  ///< relative cutoff on singular values / pivoted-R diagonal
  std::uint64_t seed = 0;
  bool record_bases = false;  ///< keep the per-pass bases (diagnostics/tests)
};

struct RecoveryResult {
  Eigen::MatrixXd basis;                 ///< orthonormal, k x d
  double lambda_hat = 0.0;               ///< NaN when the recovered space is empty
  std::vector<double> residual_history;  ///< one entry per pass
  int passes = 0;
  long op_applications = 0;              ///< block applications of the operator
  bool converged = false;
  std::uint64_t seed = 0;
  std::vector<Eigen::MatrixXd> pass_bases;  ///< filled only when record_bases

  Eigen::Index dimension() const { return basis.cols(); }
};

/// Sum over columns of ||A u_j - lambda u_j||_2.
double residual_metric(const LinearOperator& op, const Eigen::Ref<const Eigen::MatrixXd>& u,
                       double lambda);

/// Recover the eigenspace associated with the spectrum segment the filter
/// selects. Each pass applies the degree-N expansion of the filter to the
/// block, re-orthonormalizes (pivoted QR; rank from the R diagonal against
/// rank_threshold), and rotates onto the Ritz vectors of the operator
/// restricted to the block's span. The retained columns are those whose
/// Rayleigh quotient lies inside the filter window [c-R, c+R]; lambda_hat is
/// their mean and the residual sums over them, so surplus block columns
/// (b larger than the eigenspace) do not pollute the stopping test. The
/// returned basis comes from the final pre-orthonormalization block,
/// rank-truncated by its singular values and window-retained. An empty
/// window for two consecutive passes (or an annihilated block) yields the
/// converged-empty result. Non-convergence is reported in the result, not
/// thrown. A block smaller than the true eigenspace dimension converges to
/// a subspace of it with a clean residual; nothing post-hoc reveals the
/// shortfall, so size the block at least as large as the expected dimension.
RecoveryResult recover_eigenspace(const LinearOperator& op, const FilterParams& p,
                                  const RecoveryConfig& cfg);

/// A = Q^T D Q with Q the orthonormal DCT-II matrix and D = diag(spectrum);
/// applications cost O(k log k) per vector via fast transforms. apply_naive
/// is the O(k^2) oracle route.
class DctOperator final : public LinearOperator {
 public:
  using LinearOperator::apply;
  explicit DctOperator(Eigen::VectorXd spectrum);

  Eigen::Index dimension() const override { return spectrum_.size(); }
  void apply(const Eigen::Ref<const Eigen::MatrixXd>& in,
             Eigen::Ref<Eigen::MatrixXd> out) const override;
  std::optional<std::pair<double, double>> spectral_bounds() const override;

  void apply_naive(const Eigen::Ref<const Eigen::MatrixXd>& in,
                   Eigen::Ref<Eigen::MatrixXd> out) const;

  const Eigen::VectorXd& spectrum() const { return spectrum_; }

 private:
  Eigen::VectorXd spectrum_;
};

DctOperator dct_operator(Eigen::VectorXd spectrum);

std::string recovery_result_to_json(const RecoveryResult& r);

}  // namespace chebmat
