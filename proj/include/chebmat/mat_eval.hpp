#pragma once

#include <vector>

#include "chebmat/cheb_scalar.hpp"
#include "chebmat/dense_matrix.hpp"
#include "chebmat/linear_operator.hpp"

namespace chebmat {

/// Affine spectrum map from [lo, hi] onto [-1, 1].
struct SpectralScaling {
  double lo = -1.0;
  double hi = 1.0;

  /// B = (2A - (hi+lo) I) / (hi - lo).
  DenseMatrix scale_matrix(const DenseMatrix& a) const;
  double scale_point(double x) const { return (2.0 * x - (hi + lo)) / (hi - lo); }
  double unscale_point(double y) const { return ((hi - lo) * y + hi + lo) / 2.0; }
  bool is_identity() const { return lo == -1.0 && hi == 1.0; }
};

/// Truncated matrix Chebyshev expansion sum' alpha_n T_n(A) by the backward
/// (Clenshaw) recurrence. The spectrum of A must lie in [-1, 1]
/// (caller-certified, or apply SpectralScaling first).
///
/// The recurrence multiplies by 2A in the loop and combines with A at the
/// end (d <- 2A d - dd + c_n I; result = A d - dd + c_0/2 I). The variant
/// that pre-shifts the multiplier to 2(2A - I) belongs to evaluation on a
/// [0,1]-scaled argument and fails to reproduce the scalar series on
/// diagonal matrices, which is the arbiter here.
DenseMatrix clenshaw_matrix(const ChebCoeffs& c, const DenseMatrix& a);

/// Same series, computed the slow way: build every T_n(A) by the three-term
/// recursion and accumulate. Reference path for clenshaw_matrix.
DenseMatrix direct_sum_matrix(const ChebCoeffs& c, const DenseMatrix& a);

/// S_N(f)(A) * V for a matrix-free operator, without forming any k x k
/// matrix. Costs exactly N block applications of op; the recurrence keeps
/// three k x b work buffers beyond the input.
Eigen::MatrixXd clenshaw_apply(const ChebCoeffs& c, const LinearOperator& op,
                               const Eigen::Ref<const Eigen::MatrixXd>& v);

/// g on [-1,1] with g(scale_point(x)) = f(x), paired with the matching
/// operator transform, so that g(B) = f(A) for B = scale_matrix(A).
struct RescaledFunction {
  ScalarFunction g;
  SpectralScaling scaling;
};
RescaledFunction rescale_function_and_operator(const ScalarFunction& f, double lo, double hi);

/// ||S_N(f)(A) - truth|| for every N in `ns` (ascending), sharing one pass of
/// the three-term recursion across all N. Sweep workhorse for convergence
/// experiments.
std::vector<double> truncation_error_sweep(const ChebCoeffs& c, const DenseMatrix& a,
                                           const DenseMatrix& truth, const std::vector<int>& ns,
                                           ErrorNorm norm = ErrorNorm::spectral);

}  // namespace chebmat
