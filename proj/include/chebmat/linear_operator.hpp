#pragma once

#include <memory>
#include <optional>
#include <utility>

#include <Eigen/Dense>

#include "chebmat/dense_matrix.hpp"

namespace chebmat {

/// Abstract real linear map. Large-scale algorithms get no other access to
/// the matrix than applying it to a block of vectors.
class LinearOperator {
 public:
  virtual ~LinearOperator() = default;

  virtual Eigen::Index dimension() const = 0;

  /// out = A * in, where in/out are k x b blocks. in and out never alias.
  virtual void apply(const Eigen::Ref<const Eigen::MatrixXd>& in,
                     Eigen::Ref<Eigen::MatrixXd> out) const = 0;

  /// Interval certified to contain all eigenvalues, when known.
  virtual std::optional<std::pair<double, double>> spectral_bounds() const {
    return std::nullopt;
  }

  Eigen::MatrixXd apply(const Eigen::Ref<const Eigen::MatrixXd>& in) const {
    Eigen::MatrixXd out(in.rows(), in.cols());
    apply(in, out);
    return out;
  }
};

class DenseOperator final : public LinearOperator {
 public:
  using LinearOperator::apply;
  explicit DenseOperator(DenseMatrix a,
                         std::optional<std::pair<double, double>> bounds = std::nullopt);

  Eigen::Index dimension() const override { return a_.rows(); }
  void apply(const Eigen::Ref<const Eigen::MatrixXd>& in,
             Eigen::Ref<Eigen::MatrixXd> out) const override;
  std::optional<std::pair<double, double>> spectral_bounds() const override { return bounds_; }

  const DenseMatrix& matrix() const { return a_; }

 private:
  DenseMatrix a_;
  std::optional<std::pair<double, double>> bounds_;
};

class DiagonalOperator final : public LinearOperator {
 public:
  using LinearOperator::apply;
  explicit DiagonalOperator(Eigen::VectorXd diag);

  Eigen::Index dimension() const override { return diag_.size(); }
  void apply(const Eigen::Ref<const Eigen::MatrixXd>& in,
             Eigen::Ref<Eigen::MatrixXd> out) const override;
  std::optional<std::pair<double, double>> spectral_bounds() const override;

  const Eigen::VectorXd& diagonal() const { return diag_; }

 private:
  Eigen::VectorXd diag_;
};

/// Affine spectrum map B = (2A - (hi+lo) I) / (hi - lo), applied lazily. Does
/// not own the wrapped operator unless constructed from a unique_ptr.
class ScaledOperator final : public LinearOperator {
 public:
  using LinearOperator::apply;
  ScaledOperator(const LinearOperator& inner, double lo, double hi);
  ScaledOperator(std::unique_ptr<LinearOperator> inner, double lo, double hi);

  Eigen::Index dimension() const override { return inner_->dimension(); }
  void apply(const Eigen::Ref<const Eigen::MatrixXd>& in,
             Eigen::Ref<Eigen::MatrixXd> out) const override;
  std::optional<std::pair<double, double>> spectral_bounds() const override;

 private:
  std::unique_ptr<LinearOperator> owned_;
  const LinearOperator* inner_;
  double lo_, hi_;
};

}  // namespace chebmat
