#pragma once

#include <Eigen/Dense>

namespace chebmat::dct {

// Unnormalized cosine transforms, FFTW sign/scale conventions:
//
//   dct2:  y[n] = 2 * sum_{j=0}^{M-1} x[j] cos(pi n (j+1/2) / M)
//   dct3:  y[j] = x[0] + 2 * sum_{n=1}^{M-1} x[n] cos(pi n (j+1/2) / M)
//
// dct3(dct2(x)) == 2*M*x. The fast paths run in O(M log M) for any M; the
// naive O(M^2) versions are the correctness oracle and are kept as a public
// dual route on purpose.

Eigen::VectorXd dct2(const Eigen::VectorXd& x);
Eigen::VectorXd dct3(const Eigen::VectorXd& x);

Eigen::VectorXd dct2_naive(const Eigen::VectorXd& x);
Eigen::VectorXd dct3_naive(const Eigen::VectorXd& x);

// In-place column variants used by operator code; in and out must not alias.
void dct2(const double* in, double* out, int n);
void dct3(const double* in, double* out, int n);

}  // namespace chebmat::dct
