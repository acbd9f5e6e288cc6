#include "chebmat/spectral_filter.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <json.hpp>

#include "chebmat/builtins.hpp"
#include "chebmat/dct.hpp"
#include "chebmat/mat_eval.hpp"
#include "chebmat/rng.hpp"

namespace chebmat {

double erf_filter(double x, const FilterParams& p) {
  return erf_filter_value(x, p.center, p.half_width, p.steepness);
}

ScalarFunction erf_filter_function(const FilterParams& p) {
  return make_erf_filter(p.center, p.half_width, p.steepness);
}

double residual_metric(const LinearOperator& op, const Eigen::Ref<const Eigen::MatrixXd>& u,
                       double lambda) {
  if (u.cols() == 0) return 0.0;
  const Eigen::MatrixXd au = op.apply(u);
  double total = 0.0;
  for (Eigen::Index j = 0; j < u.cols(); ++j)
    total += (au.col(j) - lambda * u.col(j)).norm();
  return total;
}

namespace {

struct RitzStep {
  Eigen::MatrixXd vectors;      // rotated orthonormal block, k x r
  Eigen::MatrixXd a_vectors;    // A * vectors
  Eigen::VectorXd values;       // Rayleigh quotients of the columns
  std::vector<Eigen::Index> retained;  // columns with |value - c| <= R
};

// Rotate an orthonormal block onto the Ritz vectors of the (symmetric)
// operator restricted to its span, and mark the columns whose Rayleigh
// quotient falls inside the filter window. One block application.
RitzStep ritz_rotate(const LinearOperator& op, const Eigen::MatrixXd& v,
                     const FilterParams& p, long& op_applications) {
  RitzStep step;
  const Eigen::MatrixXd av = op.apply(v);
  op_applications += 1;
  Eigen::MatrixXd h = v.transpose() * av;
  h = 0.5 * (h + h.transpose()).eval();
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  step.vectors = v * es.eigenvectors();
  step.a_vectors = av * es.eigenvectors();
  step.values = es.eigenvalues();
  for (Eigen::Index j = 0; j < step.values.size(); ++j)
    if (std::abs(step.values(j) - p.center) <= p.half_width) step.retained.push_back(j);
  return step;
}

void fill_result_from(const RitzStep& step, RecoveryResult& result) {
  const Eigen::Index d = static_cast<Eigen::Index>(step.retained.size());
  result.basis.resize(step.vectors.rows(), d);
  double lambda = 0.0;
  for (Eigen::Index j = 0; j < d; ++j) {
    result.basis.col(j) = step.vectors.col(step.retained[j]);
    lambda += step.values(step.retained[j]);
  }
  result.lambda_hat = d > 0 ? lambda / static_cast<double>(d)
                            : std::numeric_limits<double>::quiet_NaN();
  double residual = 0.0;
  for (Eigen::Index j = 0; j < d; ++j) {
    const Eigen::Index col = step.retained[j];
    residual += (step.a_vectors.col(col) - result.lambda_hat * step.vectors.col(col)).norm();
  }
  result.residual_history.push_back(residual);
}

}  // namespace

RecoveryResult recover_eigenspace(const LinearOperator& op, const FilterParams& p,
                                  const RecoveryConfig& cfg) {
  if (cfg.block_size < 1) throw std::invalid_argument("recover_eigenspace: block_size < 1");
  if (!(cfg.residual_tol > 0.0) || !(cfg.rank_threshold > 0.0))
    throw std::invalid_argument("recover_eigenspace: tolerances must be positive");
  if (cfg.degree < 1 || cfg.max_passes < 1)
    throw std::invalid_argument("recover_eigenspace: degree and max_passes must be >= 1");

  const Eigen::Index k = op.dimension();
  const ChebCoeffs coeffs = cheb_coeffs(erf_filter_function(p), cfg.degree);
  // Below this scale the filtered block is indistinguishable from roundoff of
  // an annihilated one; the recovered space is empty.
  const double empty_floor = 1e-10 * std::sqrt(static_cast<double>(k));

  RecoveryResult result;
  result.seed = cfg.seed;

  Rng rng(cfg.seed);
  Eigen::MatrixXd v = gaussian_matrix(rng, k, cfg.block_size);
  Eigen::MatrixXd w;
  int empty_streak = 0;
  bool stopped = false;

  auto empty_result = [&]() {
    result.basis.resize(k, 0);
    result.lambda_hat = std::numeric_limits<double>::quiet_NaN();
    if (result.residual_history.empty()) result.residual_history.push_back(0.0);
    else result.residual_history.back() = 0.0;
    result.converged = true;
    return result;
  };

  for (int pass = 1; pass <= cfg.max_passes && !stopped; ++pass) {
    w = clenshaw_apply(coeffs, op, v);
    result.op_applications += cfg.degree;
    result.passes = pass;

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(w);
    const Eigen::VectorXd rdiag = qr.matrixR().diagonal().cwiseAbs();
    if (rdiag(0) < empty_floor) return empty_result();
    Eigen::Index rank = 1;
    while (rank < rdiag.size() && rdiag(rank) >= cfg.rank_threshold * rdiag(0)) ++rank;
    v = qr.householderQ() * Eigen::MatrixXd::Identity(k, rank);

    const RitzStep step = ritz_rotate(op, v, p, result.op_applications);
    v = step.vectors;  // keep the whole rotated block iterating
    if (cfg.record_bases) result.pass_bases.push_back(v);

    if (step.retained.empty()) {
      // After the first pass the block already follows the filtered operator,
      // so two consecutive empty windows mean the window holds no spectrum.
      if (++empty_streak >= 2) return empty_result();
      result.residual_history.push_back(std::numeric_limits<double>::infinity());
      continue;
    }
    empty_streak = 0;
    fill_result_from(step, result);
    stopped = result.residual_history.back() < cfg.residual_tol;
  }

  // The returned basis comes from the final pre-orthonormalization block,
  // rank-truncated by its singular values, Ritz-rotated, window-retained.
  Eigen::BDCSVD<Eigen::MatrixXd> svd(w, Eigen::ComputeThinU);
  const Eigen::VectorXd sv = svd.singularValues();
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv(rank) >= cfg.rank_threshold * sv(0)) ++rank;
  if (rank == 0 || sv(0) < empty_floor) return empty_result();
  const Eigen::MatrixXd u = svd.matrixU().leftCols(rank);
  const RitzStep final_step = ritz_rotate(op, u, p, result.op_applications);
  if (final_step.retained.empty()) return empty_result();
  result.residual_history.pop_back();
  fill_result_from(final_step, result);
  result.converged = result.residual_history.back() < cfg.residual_tol;
  return result;
}

DctOperator::DctOperator(Eigen::VectorXd spectrum) : spectrum_(std::move(spectrum)) {
  if (spectrum_.size() == 0) throw std::invalid_argument("DctOperator: empty spectrum");
}

void DctOperator::apply(const Eigen::Ref<const Eigen::MatrixXd>& in,
                        Eigen::Ref<Eigen::MatrixXd> out) const {
  const Eigen::Index k = spectrum_.size();
  if (in.rows() != k || out.rows() != k || in.cols() != out.cols())
    throw std::invalid_argument("DctOperator: block shape mismatch");
  const double c0 = std::sqrt(1.0 / static_cast<double>(k));
  const double cn = std::sqrt(2.0 / static_cast<double>(k));
  Eigen::VectorXd col(k), tmp(k);
  for (Eigen::Index j = 0; j < in.cols(); ++j) {
    col = in.col(j);
    dct::dct2(col.data(), tmp.data(), static_cast<int>(k));
    tmp(0) *= 0.5 * c0;
    tmp.tail(k - 1) *= 0.5 * cn;          // tmp = Q x
    tmp.array() *= spectrum_.array();     // tmp = D Q x
    tmp(0) *= c0;
    tmp.tail(k - 1) *= 0.5 * cn;
    dct::dct3(tmp.data(), col.data(), static_cast<int>(k));  // col = Q^T D Q x
    out.col(j) = col;
  }
}

void DctOperator::apply_naive(const Eigen::Ref<const Eigen::MatrixXd>& in,
                              Eigen::Ref<Eigen::MatrixXd> out) const {
  const Eigen::Index k = spectrum_.size();
  Eigen::MatrixXd q(k, k);
  const double c0 = std::sqrt(1.0 / static_cast<double>(k));
  const double cn = std::sqrt(2.0 / static_cast<double>(k));
  for (Eigen::Index n = 0; n < k; ++n)
    for (Eigen::Index j = 0; j < k; ++j)
      q(n, j) = (n == 0 ? c0 : cn) *
                std::cos(std::numbers::pi * static_cast<double>(n) * (j + 0.5) / static_cast<double>(k));
  out = q.transpose() * (spectrum_.asDiagonal() * (q * in));
}

std::optional<std::pair<double, double>> DctOperator::spectral_bounds() const {
  return std::make_pair(spectrum_.minCoeff(), spectrum_.maxCoeff());
}

DctOperator dct_operator(Eigen::VectorXd spectrum) { return DctOperator(std::move(spectrum)); }

std::string recovery_result_to_json(const RecoveryResult& r) {
  nlohmann::json j;
  j["dimension"] = static_cast<long>(r.dimension());
  if (std::isnan(r.lambda_hat))
    j["lambda_hat"] = nullptr;
  else
    j["lambda_hat"] = r.lambda_hat;
  j["residual_history"] = r.residual_history;
  j["passes"] = r.passes;
  j["op_applications"] = r.op_applications;
  j["seed"] = r.seed;
  j["converged"] = r.converged;
  return j.dump(2);
}

}  // namespace chebmat
