#pragma once

#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace chebmat {

/// Raised when a derivative of a ScalarFunction is requested where none is
/// available (no registry and finite differences refused, e.g. at a kink).
struct CapabilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Coefficients alpha_0..alpha_N of a truncated Chebyshev expansion
/// sum' alpha_n T_n(x). The n=0 coefficient is stored un-halved; the 1/2
/// weight of the dashed sum is applied at evaluation time (this is the single
/// place the convention lives).
struct ChebCoeffs {
  int degree = 0;               ///< N
  int samples = 0;              ///< quadrature resolution M used to compute coeffs
  std::vector<double> coeffs;   ///< length N+1

  static ChebCoeffs from_values(std::vector<double> values, int samples = 0);
};

/// A real function on [-1,1] with an optional closed-form derivative registry.
///
/// Derivatives are refused within `kink_guard` of a registered kink point;
/// the Jordan oracle relies on that refusal to avoid evaluating Definition-
/// style matrix functions where the derivatives do not exist.
class ScalarFunction {
 public:
  using Eval = std::function<double(double)>;
  using Deriv = std::function<double(double, int)>;

  ScalarFunction(std::string label, Eval f)
      : label_(std::move(label)), eval_(std::move(f)) {}
  ScalarFunction(std::string label, Eval f, Deriv d, std::vector<double> kinks)
      : label_(std::move(label)),
        eval_(std::move(f)),
        deriv_(std::move(d)),
        kinks_(std::move(kinks)) {}

  double operator()(double x) const { return eval_(x); }

  bool has_derivatives() const { return static_cast<bool>(deriv_); }
  const std::vector<double>& kinks() const { return kinks_; }
  bool near_kink(double x, double guard = kink_guard) const;

  /// j-th derivative at x (j=0 is the function itself). Throws
  /// CapabilityError if no registry is present or x sits on a kink.
  double derivative(double x, int order) const;

  const std::string& label() const { return label_; }

  static constexpr double kink_guard = 1e-12;

 private:
  std::string label_;
  Eval eval_;
  Deriv deriv_;
  std::vector<double> kinks_;
};

/// T_n(x) by the three-term recursion. |x| <= 1 required; the trigonometric
/// form is deliberately not used (it loses accuracy near the endpoints).
double cheb_poly(int n, double x);

/// k-th derivative of T_n at x, via the differentiated three-term recurrence
///   T_n^(k) = 2x T_{n-1}^(k) + 2k T_{n-1}^(k-1) - T_{n-2}^(k),
/// which is exact in the same sense as the recursion itself. Zero when k > n.
double cheb_poly_derivative(int n, int k, double x);

/// T_n^(k)(1) by the product formula n^2(n^2-1)...(n^2-(k-1)^2) / (2k-1)!!.
/// This is the global bound |T_n^(k)(x)| <= T_n^(k)(1) on [-1,1].
double cheb_poly_derivative_at_one(int n, int k);

/// Expansion coefficients of f up to degree N from M samples at the
/// first-kind Chebyshev points x_j = cos(pi (j+1/2)/M); the discrete
/// orthogonality makes this one DCT-II. M = 0 selects max(2(N+1), 512).
/// Exact (to rounding) for polynomials of degree <= N.
ChebCoeffs cheb_coeffs(const ScalarFunction& f, int N, int M = 0);

/// Same computation from pre-tabulated samples f(x_j), j = 0..M-1.
ChebCoeffs cheb_coeffs_from_samples(const std::vector<double>& samples, int N);

/// Clenshaw evaluation of sum' alpha_n T_n(x).
double eval_cheb_scalar(const ChebCoeffs& c, double x);

/// Aliasing guard: recompute the coefficients at 2M samples and report the
/// largest drift. The quadrature resolution M is a choice, not a given; a
/// drift above ~1e-10 means M was too small for this f.
double aliasing_drift(const ScalarFunction& f, int N, int M = 0);

int default_sample_count(int N);

// --- serialization ---------------------------------------------------------

std::string coeffs_to_json(const ChebCoeffs& c);
ChebCoeffs coeffs_from_json(const std::string& text);
void write_coeffs_json(const ChebCoeffs& c, const std::string& path);
ChebCoeffs read_coeffs_json(const std::string& path);
void write_coeffs_csv(const ChebCoeffs& c, std::ostream& out);  // index,value

}  // namespace chebmat
