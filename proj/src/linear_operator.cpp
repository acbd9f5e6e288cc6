#include "chebmat/linear_operator.hpp"

#include <stdexcept>

namespace chebmat {

DenseOperator::DenseOperator(DenseMatrix a, std::optional<std::pair<double, double>> bounds)
    : a_(std::move(a)), bounds_(bounds) {
  if (a_.rows() != a_.cols()) throw std::invalid_argument("DenseOperator: non-square matrix");
}

void DenseOperator::apply(const Eigen::Ref<const Eigen::MatrixXd>& in,
                          Eigen::Ref<Eigen::MatrixXd> out) const {
  out.noalias() = a_ * in;
}

DiagonalOperator::DiagonalOperator(Eigen::VectorXd diag) : diag_(std::move(diag)) {
  if (diag_.size() == 0) throw std::invalid_argument("DiagonalOperator: empty diagonal");
}

void DiagonalOperator::apply(const Eigen::Ref<const Eigen::MatrixXd>& in,
                             Eigen::Ref<Eigen::MatrixXd> out) const {
  out = diag_.asDiagonal() * in;
}

std::optional<std::pair<double, double>> DiagonalOperator::spectral_bounds() const {
  return std::make_pair(diag_.minCoeff(), diag_.maxCoeff());
}

ScaledOperator::ScaledOperator(const LinearOperator& inner, double lo, double hi)
    : inner_(&inner), lo_(lo), hi_(hi) {
  if (!(lo < hi)) throw std::invalid_argument("ScaledOperator: lo must be < hi");
}

ScaledOperator::ScaledOperator(std::unique_ptr<LinearOperator> inner, double lo, double hi)
    : owned_(std::move(inner)), inner_(owned_.get()), lo_(lo), hi_(hi) {
  if (!(lo_ < hi_)) throw std::invalid_argument("ScaledOperator: lo must be < hi");
}

void ScaledOperator::apply(const Eigen::Ref<const Eigen::MatrixXd>& in,
                           Eigen::Ref<Eigen::MatrixXd> out) const {
  inner_->apply(in, out);
  const double scale = 2.0 / (hi_ - lo_);
  const double shift = (hi_ + lo_) / (hi_ - lo_);
  out = scale * out - shift * in;
}

std::optional<std::pair<double, double>> ScaledOperator::spectral_bounds() const {
  auto b = inner_->spectral_bounds();
  if (!b) return std::nullopt;
  auto map = [&](double x) { return (2.0 * x - (hi_ + lo_)) / (hi_ - lo_); };
  return std::make_pair(map(b->first), map(b->second));
}

}  // namespace chebmat
