#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "chebmat/cheb_scalar.hpp"
#include "chebmat/dense_matrix.hpp"

namespace chebmat {

struct JordanBlockSpec {
  double lambda = 0.0;
  int size = 1;
  double offdiag = 1.0;  ///< superdiagonal value (1 is the classical block)
};

struct OrthogonalSimilarity {
  std::uint64_t seed = 0;
};

/// Optional similarity transform Z: none, a seeded random orthogonal matrix,
/// or an explicit matrix.
using SimilaritySpec = std::variant<std::monostate, OrthogonalSimilarity, DenseMatrix>;

/// Generator of matrices with exactly known Jordan structure. Specs are
/// always constructed, never recovered from a matrix.
struct JordanSpec {
  std::vector<JordanBlockSpec> blocks;
  SimilaritySpec similarity;

  int order() const;
  int largest_block() const;  ///< m
  double spectral_radius() const;

  /// True iff rho <= 1 and every eigenvalue of magnitude >= 1 - delta is
  /// semisimple (all its blocks have size 1).
  bool is_delta_condense(double delta) const;

  std::string describe() const;  ///< short tag for report file names
};

/// Z^-1 J Z (or J itself when no similarity): J block-diagonal, each block
/// upper-bidiagonal with lambda_i on the diagonal and offdiag above it.
DenseMatrix build_jordan_matrix(const JordanSpec& spec);

/// The Z the spec denotes, materialized; nullopt when none.
std::optional<DenseMatrix> materialize_similarity(const JordanSpec& spec);

enum class DerivSource { closed_form, finite_difference };

/// f(lambda), f'(lambda), ..., enough for the largest block at lambda.
struct DerivativeStack {
  double lambda = 0.0;
  std::vector<double> values;
  DerivSource source = DerivSource::closed_form;
};

/// Builds the stack from the function's registry, or by central finite
/// differences (orders 1..4, step h_j = eps^(1/(j+2))) when no registry is
/// present. Throws CapabilityError at kinks or for unsupported orders.
DerivativeStack make_derivative_stack(const ScalarFunction& f, double lambda, int count);

/// f applied to one Jordan block: upper triangular with entry
/// (i, i+q) = f^(q)(lambda)/q! * offdiag^q. The offdiag power follows from
/// similarity with diag(1, s, s^2, ...), which keeps the unit-offdiag
/// formula the single source of truth.
DenseMatrix f_of_jordan_block(const DerivativeStack& d, int size, double offdiag);

/// Ground-truth f(A) through the Jordan definition: f(J) assembled
/// block-wise, conjugated by Z when present. Every convergence experiment
/// measures against this.
DenseMatrix f_of_matrix_via_jordan(const ScalarFunction& f, const JordanSpec& spec);

/// Numerical check of the binomial identity for polynomials on a Jordan
/// block: entry (q, j) of p(J) from explicit matrix powers against
/// sum_n a_n C(n, j-q) lambda^(n-j+q). True when they agree to 1e-11.
bool poly_on_jordan_block_check(const std::vector<double>& monomial_coeffs, double lambda,
                                int size);

std::string jordan_spec_to_json(const JordanSpec& spec);
JordanSpec jordan_spec_from_json(const std::string& text);
JordanSpec read_jordan_spec(const std::string& path);

}  // namespace chebmat
