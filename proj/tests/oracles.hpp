// Test-only oracles, independent of the library's computation paths.
#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "chebmat/cheb_scalar.hpp"

namespace oracles {

// Weighted inner product (2/pi) integral of f(t) T_n(t) / sqrt(1-t^2), via the
// substitution t = cos(theta) and composite 15-point Gauss-Legendre with the
// panel count scaled to the oscillation of cos(n theta).
template <typename F>
double quadrature_alpha(F&& f, int n) {
  static const double nodes[8] = {0.0,
                                  0.2011940939974345,
                                  0.3941513470775634,
                                  0.5709721726085388,
                                  0.7244177313601701,
                                  0.8482065834104272,
                                  0.9372733924007060,
                                  0.9879925180204854};
  static const double weights[8] = {0.2025782419255613, 0.1984314853271116,
                                    0.1861610000155622, 0.1662692058169939,
                                    0.1395706779261543, 0.1071592204671719,
                                    0.0703660474881081, 0.0307532419961173};
  const int panels = std::max(64, 4 * n);
  const double h = std::numbers::pi / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = (p + 0.5) * h;
    double s = weights[0] * f(std::cos(mid)) * std::cos(n * mid);
    for (int q = 1; q < 8; ++q) {
      const double t1 = mid + 0.5 * h * nodes[q];
      const double t2 = mid - 0.5 * h * nodes[q];
      s += weights[q] * (f(std::cos(t1)) * std::cos(n * t1) + f(std::cos(t2)) * std::cos(n * t2));
    }
    total += s * 0.5 * h;
  }
  return 2.0 / std::numbers::pi * total;
}

// Central finite differences of cheb_poly for derivative orders 1..3.
inline double fd_cheb_derivative(int n, int k, double x, double h) {
  auto t = [&](double y) { return chebmat::cheb_poly(n, y); };
  switch (k) {
    case 1:
      return (t(x + h) - t(x - h)) / (2 * h);
    case 2:
      return (t(x + h) - 2 * t(x) + t(x - h)) / (h * h);
    case 3:
      return (t(x + 2 * h) - 2 * t(x + h) + 2 * t(x - h) - t(x - 2 * h)) / (2 * h * h * h);
    default:
      throw std::invalid_argument("fd_cheb_derivative: order not supported");
  }
}

// Direct evaluation of sum' alpha_n T_n(x) term by term.
inline double naive_cheb_sum(const chebmat::ChebCoeffs& c, double x) {
  double s = 0.5 * c.coeffs[0];
  for (int n = 1; n <= c.degree; ++n) s += c.coeffs[n] * chebmat::cheb_poly(n, x);
  return s;
}

// Largest principal angle (radians) by which span(u) sticks out of span(v),
// for orthonormal bases. The sine formulation stays accurate for tiny
// angles, where the cosine route bottoms out at sqrt(eps).
inline double principal_angle(const Eigen::MatrixXd& u, const Eigen::MatrixXd& v) {
  const Eigen::MatrixXd residual = u - v * (v.transpose() * u);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(residual);
  return std::asin(std::min(1.0, svd.singularValues().maxCoeff()));
}

}  // namespace oracles
