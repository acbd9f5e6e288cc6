#include "chebmat/mat_eval.hpp"

#include <algorithm>
#include <stdexcept>

namespace chebmat {

namespace {

void require_square(const DenseMatrix& a) {
  if (a.rows() != a.cols() || a.rows() == 0)
    throw std::invalid_argument("matrix Chebyshev evaluation requires a square matrix");
}

}  // namespace

DenseMatrix SpectralScaling::scale_matrix(const DenseMatrix& a) const {
  if (!(lo < hi)) throw std::invalid_argument("SpectralScaling: lo must be < hi");
  require_square(a);
  DenseMatrix b = (2.0 / (hi - lo)) * a;
  b.diagonal().array() -= (hi + lo) / (hi - lo);
  return b;
}

DenseMatrix clenshaw_matrix(const ChebCoeffs& c, const DenseMatrix& a) {
  require_square(a);
  const Eigen::Index k = a.rows();
  const int n_max = c.degree;
  if (n_max == 0)
    return (0.5 * c.coeffs[0]) * DenseMatrix::Identity(k, k);
  DenseMatrix d = DenseMatrix::Zero(k, k);
  DenseMatrix dd = DenseMatrix::Zero(k, k);
  DenseMatrix t(k, k);
  for (int n = n_max; n >= 1; --n) {
    t.noalias() = 2.0 * (a * d);
    t -= dd;
    t.diagonal().array() += c.coeffs[n];
    dd.swap(d);
    d.swap(t);
  }
  DenseMatrix result;
  result.noalias() = a * d;
  result -= dd;
  result.diagonal().array() += 0.5 * c.coeffs[0];
  return result;
}

DenseMatrix direct_sum_matrix(const ChebCoeffs& c, const DenseMatrix& a) {
  require_square(a);
  const Eigen::Index k = a.rows();
  DenseMatrix sum = (0.5 * c.coeffs[0]) * DenseMatrix::Identity(k, k);
  if (c.degree == 0) return sum;
  DenseMatrix t_prev = DenseMatrix::Identity(k, k);
  DenseMatrix t_cur = a;
  sum += c.coeffs[1] * t_cur;
  DenseMatrix t_next(k, k);
  for (int n = 2; n <= c.degree; ++n) {
    t_next.noalias() = 2.0 * (a * t_cur);
    t_next -= t_prev;
    sum += c.coeffs[n] * t_next;
    t_prev.swap(t_cur);
    t_cur.swap(t_next);
  }
  return sum;
}

Eigen::MatrixXd clenshaw_apply(const ChebCoeffs& c, const LinearOperator& op,
                               const Eigen::Ref<const Eigen::MatrixXd>& v) {
  if (op.dimension() != v.rows())
    throw std::invalid_argument("clenshaw_apply: operator/block dimension mismatch");
  const int n_max = c.degree;
  if (n_max == 0) return (0.5 * c.coeffs[0]) * v;
  // b_{N} = c_N V needs no application, so the total cost is exactly N
  // applications of op: N-1 in the loop plus the final combination.
  Eigen::MatrixXd d = c.coeffs[n_max] * v;
  Eigen::MatrixXd dd = Eigen::MatrixXd::Zero(v.rows(), v.cols());
  Eigen::MatrixXd t(v.rows(), v.cols());
  for (int n = n_max - 1; n >= 1; --n) {
    op.apply(d, t);
    t = 2.0 * t - dd + c.coeffs[n] * v;
    dd.swap(d);
    d.swap(t);
  }
  op.apply(d, t);
  return t - dd + (0.5 * c.coeffs[0]) * v;
}

RescaledFunction rescale_function_and_operator(const ScalarFunction& f, double lo, double hi) {
  if (!(lo < hi)) throw std::invalid_argument("rescale_function_and_operator: lo must be < hi");
  SpectralScaling scaling{lo, hi};
  auto eval = [f, scaling](double y) { return f(scaling.unscale_point(y)); };
  const double half_width = (hi - lo) / 2.0;
  ScalarFunction g =
      f.has_derivatives()
          ? ScalarFunction(
                f.label() + "@[" + std::to_string(lo) + "," + std::to_string(hi) + "]", eval,
                [f, scaling, half_width](double y, int j) {
                  double s = 1.0;
                  for (int i = 0; i < j; ++i) s *= half_width;
                  return s * f.derivative(scaling.unscale_point(y), j);
                },
                [&] {
                  std::vector<double> ks;
                  for (double kx : f.kinks()) ks.push_back(scaling.scale_point(kx));
                  return ks;
                }())
          : ScalarFunction(f.label() + "@[" + std::to_string(lo) + "," + std::to_string(hi) + "]",
                           eval);
  return RescaledFunction{std::move(g), scaling};
}

std::vector<double> truncation_error_sweep(const ChebCoeffs& c, const DenseMatrix& a,
                                           const DenseMatrix& truth, const std::vector<int>& ns,
                                           ErrorNorm norm) {
  require_square(a);
  if (truth.rows() != a.rows() || truth.cols() != a.cols())
    throw std::invalid_argument("truncation_error_sweep: truth shape mismatch");
  if (!std::is_sorted(ns.begin(), ns.end()))
    throw std::invalid_argument("truncation_error_sweep: N values must be ascending");
  if (!ns.empty() && ns.back() > c.degree)
    throw std::invalid_argument("truncation_error_sweep: N exceeds coefficient degree");

  const Eigen::Index k = a.rows();
  std::vector<double> errors;
  errors.reserve(ns.size());
  DenseMatrix sum = (0.5 * c.coeffs[0]) * DenseMatrix::Identity(k, k);
  DenseMatrix t_prev = DenseMatrix::Identity(k, k);
  DenseMatrix t_cur(k, k), t_next(k, k);
  std::size_t idx = 0;
  auto emit = [&](int n) {
    while (idx < ns.size() && ns[idx] == n) {
      errors.push_back(matrix_error(sum, truth, norm));
      ++idx;
    }
  };
  emit(0);
  if (c.degree >= 1) {
    t_cur = a;
    sum += c.coeffs[1] * t_cur;
    emit(1);
    for (int n = 2; n <= c.degree && idx < ns.size(); ++n) {
      t_next.noalias() = 2.0 * (a * t_cur);
      t_next -= t_prev;
      sum += c.coeffs[n] * t_next;
      t_prev.swap(t_cur);
      t_cur.swap(t_next);
      emit(n);
    }
  }
  if (idx != ns.size())
    throw std::invalid_argument("truncation_error_sweep: N values must be nonnegative and unique");
  return errors;
}

}  // namespace chebmat
