#include "chebmat/builtins.hpp"

#include <cmath>
#include <complex>
#include <numbers>

namespace chebmat {

namespace {

double sign(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

// d^j/dx^j of |x|^p for non-integer p, valid for x != 0.
double abs_power_derivative(double x, double p, int j) {
  double c = 1.0;
  for (int i = 0; i < j; ++i) c *= (p - i);
  const double mag = c * std::pow(std::abs(x), p - j);
  return x >= 0.0 ? mag : (j % 2 == 0 ? mag : -mag);
}

// j-th derivative of erf, via physicists' Hermite polynomials:
//   erf^(j)(u) = (2/sqrt(pi)) (-1)^(j-1) H_{j-1}(u) exp(-u^2),  j >= 1.
double erf_derivative(double u, int j) {
  double hm1 = 0.0, h = 1.0;  // H_{-1} (unused), H_0
  for (int i = 1; i < j; ++i) {
    const double hn = 2.0 * u * h - 2.0 * (i - 1) * hm1;
    hm1 = h;
    h = hn;
  }
  const double s = (j % 2 == 0) ? -1.0 : 1.0;
  return 2.0 / std::sqrt(std::numbers::pi) * s * h * std::exp(-u * u);
}

}  // namespace

ScalarFunction make_f1() {
  return ScalarFunction(
      "f1", [](double x) { return sign(x) * x * x; },
      [](double x, int j) -> double {
        switch (j) {
          case 0: return sign(x) * x * x;
          case 1: return 2.0 * std::abs(x);
          case 2: return 2.0 * sign(x);
          default: return 0.0;
        }
      },
      {0.0});
}

ScalarFunction make_f2() {
  return ScalarFunction(
      "f2", [](double x) { return std::sqrt(std::abs(x)); },
      [](double x, int j) { return abs_power_derivative(x, 0.5, j); }, {0.0});
}

ScalarFunction make_f3() {
  // 1/(x^2 + 1/4) has poles at +-i/2; with z = (x - i/2)^-(j+1),
  // f3^(j)(x) = (-1)^j j! * 2 Im(z).
  auto deriv = [](double x, int j) {
    const std::complex<double> z = std::pow(std::complex<double>(x, -0.5), -(j + 1));
    double fact = 1.0;
    for (int i = 2; i <= j; ++i) fact *= i;
    return (j % 2 == 0 ? 1.0 : -1.0) * fact * 2.0 * z.imag();
  };
  return ScalarFunction(
      "f3", [](double x) { return 1.0 / (x * x + 0.25); }, deriv, {});
}

ScalarFunction make_f4() {
  return ScalarFunction(
      "f4", [](double x) { return std::pow(std::abs(x), 3.5); },
      [](double x, int j) { return abs_power_derivative(x, 3.5, j); }, {0.0});
}

double erf_filter_value(double x, double center, double half_width, double steepness) {
  return 0.5 * (1.0 - std::erf(2.0 / steepness * (std::abs(x - center) - half_width)));
}

ScalarFunction make_erf_filter(double center, double half_width, double steepness) {
  if (!(half_width > 0.0) || !(steepness > 0.0))
    throw std::invalid_argument("erf filter: half_width and steepness must be positive");
  auto eval = [=](double x) { return erf_filter_value(x, center, half_width, steepness); };
  auto deriv = [=](double x, int j) -> double {
    if (j == 0) return erf_filter_value(x, center, half_width, steepness);
    const double w = 2.0 / steepness;
    const double s = x > center ? 1.0 : -1.0;
    const double u = w * (std::abs(x - center) - half_width);
    const double sj = (j % 2 == 0) ? 1.0 : s;
    return -0.5 * sj * std::pow(w, j) * erf_derivative(u, j);
  };
  return ScalarFunction("erf-filter", eval, deriv, {center});
}

ScalarFunction make_polynomial(std::vector<double> monomial_coeffs, std::string label) {
  if (monomial_coeffs.empty()) monomial_coeffs.push_back(0.0);
  auto horner = [](const std::vector<double>& a, double x) {
    double v = 0.0;
    for (auto it = a.rbegin(); it != a.rend(); ++it) v = v * x + *it;
    return v;
  };
  auto eval = [=](double x) { return horner(monomial_coeffs, x); };
  auto deriv = [=](double x, int j) {
    std::vector<double> a = monomial_coeffs;
    for (int pass = 0; pass < j; ++pass) {
      if (a.size() <= 1) return 0.0;
      std::vector<double> d(a.size() - 1);
      for (std::size_t n = 1; n < a.size(); ++n) d[n - 1] = a[n] * static_cast<double>(n);
      a = std::move(d);
    }
    return horner(a, x);
  };
  return ScalarFunction(std::move(label), eval, deriv, {});
}

std::optional<ScalarFunction> builtin_function(std::string_view id) {
  if (id == "f1") return make_f1();
  if (id == "f2") return make_f2();
  if (id == "f3") return make_f3();
  if (id == "f4") return make_f4();
  return std::nullopt;
}

}  // namespace chebmat
