#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "chebmat/cheb_scalar.hpp"

namespace chebmat {

// Built-in test functions, each with a closed-form derivative registry valid
// away from its kink:
//
//   f1(x) = sign(x) x^2        (kink at 0)
//   f2(x) = sqrt(|x|)          (kink at 0)
//   f3(x) = 1 / (x^2 + 0.25)   (entire on the real line)
//   f4(x) = |x|^3.5            (kink at 0)

ScalarFunction make_f1();
ScalarFunction make_f2();
ScalarFunction make_f3();
ScalarFunction make_f4();

/// Scalar erf-shaped spectral filter,
///   0.5 * (1 - erf((2/r) * (|x - c| - R))).
/// Value 1/2 exactly at |x-c| = R; kink at x = c.
double erf_filter_value(double x, double center, double half_width, double steepness);

ScalarFunction make_erf_filter(double center, double half_width, double steepness);

/// Polynomial sum a_n x^n with exact derivatives; used by tests and oracles.
ScalarFunction make_polynomial(std::vector<double> monomial_coeffs,
                               std::string label = "poly");

/// Lookup by id ("f1".."f4"); nullopt for anything else.
std::optional<ScalarFunction> builtin_function(std::string_view id);

}  // namespace chebmat
