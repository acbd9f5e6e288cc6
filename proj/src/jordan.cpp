#include "chebmat/jordan.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "chebmat/rng.hpp"

namespace chebmat {

int JordanSpec::order() const {
  int k = 0;
  for (const auto& b : blocks) k += b.size;
  return k;
}

int JordanSpec::largest_block() const {
  int m = 0;
  for (const auto& b : blocks) m = std::max(m, b.size);
  return m;
}

double JordanSpec::spectral_radius() const {
  double rho = 0.0;
  for (const auto& b : blocks) rho = std::max(rho, std::abs(b.lambda));
  return rho;
}

bool JordanSpec::is_delta_condense(double delta) const {
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("is_delta_condense: delta must be in (0,1)");
  if (spectral_radius() > 1.0) return false;
  for (const auto& b : blocks)
    if (b.size > 1 && std::abs(b.lambda) >= 1.0 - delta) return false;
  return true;
}

std::string JordanSpec::describe() const {
  std::ostringstream ss;
  ss << "jordan";
  for (const auto& b : blocks) ss << "_" << b.lambda << "x" << b.size;
  return ss.str();
}

std::optional<DenseMatrix> materialize_similarity(const JordanSpec& spec) {
  if (std::holds_alternative<std::monostate>(spec.similarity)) return std::nullopt;
  if (const auto* os = std::get_if<OrthogonalSimilarity>(&spec.similarity)) {
    Rng rng(os->seed);
    return random_orthogonal(rng, spec.order());
  }
  return std::get<DenseMatrix>(spec.similarity);
}

namespace {

DenseMatrix bare_jordan(const JordanSpec& spec) {
  const int k = spec.order();
  if (k == 0) throw std::invalid_argument("JordanSpec: no blocks");
  DenseMatrix j = DenseMatrix::Zero(k, k);
  int at = 0;
  for (const auto& b : spec.blocks) {
    if (b.size <= 0) throw std::invalid_argument("JordanSpec: block size must be positive");
    for (int i = 0; i < b.size; ++i) {
      j(at + i, at + i) = b.lambda;
      if (i + 1 < b.size) j(at + i, at + i + 1) = b.offdiag;
    }
    at += b.size;
  }
  return j;
}

DenseMatrix conjugate(const DenseMatrix& inner, const JordanSpec& spec) {
  auto z = materialize_similarity(spec);
  if (!z) return inner;
  if (z->rows() != inner.rows() || z->cols() != inner.cols())
    throw std::invalid_argument("JordanSpec: similarity matrix has wrong order");
  if (std::holds_alternative<OrthogonalSimilarity>(spec.similarity))
    return z->transpose() * inner * (*z);
  Eigen::FullPivLU<DenseMatrix> lu(*z);
  if (!lu.isInvertible()) throw std::invalid_argument("JordanSpec: singular similarity matrix");
  return lu.solve(inner * (*z));
}

}  // namespace

DenseMatrix build_jordan_matrix(const JordanSpec& spec) {
  return conjugate(bare_jordan(spec), spec);
}

DerivativeStack make_derivative_stack(const ScalarFunction& f, double lambda, int count) {
  DerivativeStack d;
  d.lambda = lambda;
  d.values.resize(count);
  if (count == 0) return d;
  d.values[0] = f(lambda);
  if (f.has_derivatives()) {
    d.source = DerivSource::closed_form;
    for (int j = 1; j < count; ++j) d.values[j] = f.derivative(lambda, j);
    return d;
  }
  d.source = DerivSource::finite_difference;
  const double eps = std::numeric_limits<double>::epsilon();
  for (int j = 1; j < count; ++j) {
    const double h = std::pow(eps, 1.0 / (j + 2));
    if (f.near_kink(lambda, 2.0 * h))
      throw CapabilityError("finite differences refused near kink at x=" + std::to_string(lambda));
    switch (j) {
      case 1:
        d.values[1] = (f(lambda + h) - f(lambda - h)) / (2.0 * h);
        break;
      case 2:
        d.values[2] = (f(lambda + h) - 2.0 * f(lambda) + f(lambda - h)) / (h * h);
        break;
      case 3:
        d.values[3] = (f(lambda + 2 * h) - 2.0 * f(lambda + h) + 2.0 * f(lambda - h) -
                       f(lambda - 2 * h)) /
                      (2.0 * h * h * h);
        break;
      case 4:
        d.values[4] = (f(lambda + 2 * h) - 4.0 * f(lambda + h) + 6.0 * f(lambda) -
                       4.0 * f(lambda - h) + f(lambda - 2 * h)) /
                      (h * h * h * h);
        break;
      default:
        throw CapabilityError(
            "finite differences support derivative orders up to 4; register a closed form "
            "for higher orders");
    }
  }
  return d;
}

DenseMatrix f_of_jordan_block(const DerivativeStack& d, int size, double offdiag) {
  if (size <= 0) throw std::invalid_argument("f_of_jordan_block: size must be positive");
  if (static_cast<int>(d.values.size()) < size)
    throw std::invalid_argument("f_of_jordan_block: not enough derivatives for block size " +
                                std::to_string(size));
  DenseMatrix block = DenseMatrix::Zero(size, size);
  double fact = 1.0;
  double off_pow = 1.0;
  for (int q = 0; q < size; ++q) {
    if (q > 0) {
      fact *= q;
      off_pow *= offdiag;
    }
    const double entry = d.values[q] / fact * off_pow;
    for (int i = 0; i + q < size; ++i) block(i, i + q) = entry;
  }
  return block;
}

DenseMatrix f_of_matrix_via_jordan(const ScalarFunction& f, const JordanSpec& spec) {
  const int k = spec.order();
  if (k == 0) throw std::invalid_argument("JordanSpec: no blocks");
  DenseMatrix fj = DenseMatrix::Zero(k, k);
  int at = 0;
  for (const auto& b : spec.blocks) {
    if (b.size == 1) {
      fj(at, at) = f(b.lambda);
    } else {
      DerivativeStack d;
      try {
        d = make_derivative_stack(f, b.lambda, b.size);
      } catch (const CapabilityError& e) {
        throw CapabilityError("f(A) via Jordan form: derivative unavailable at eigenvalue " +
                              std::to_string(b.lambda) + " (block size " +
                              std::to_string(b.size) + "): " + e.what());
      }
      fj.block(at, at, b.size, b.size) = f_of_jordan_block(d, b.size, b.offdiag);
    }
    at += b.size;
  }
  return conjugate(fj, spec);
}

bool poly_on_jordan_block_check(const std::vector<double>& monomial_coeffs, double lambda,
                                int size) {
  if (size <= 0) return false;
  const int deg = static_cast<int>(monomial_coeffs.size()) - 1;
  // Route one: explicit matrix powers.
  JordanSpec spec{{{lambda, size, 1.0}}, std::monostate{}};
  const DenseMatrix j = build_jordan_matrix(spec);
  DenseMatrix p = DenseMatrix::Zero(size, size);
  DenseMatrix jpow = DenseMatrix::Identity(size, size);
  for (int n = 0; n <= deg; ++n) {
    p += monomial_coeffs[n] * jpow;
    jpow = (jpow * j).eval();
  }
  // Route two: binomial expansion of (lambda I + N)^n summed over n.
  DenseMatrix q = DenseMatrix::Zero(size, size);
  for (int row = 0; row < size; ++row) {
    for (int col = row; col < size; ++col) {
      const int r = col - row;
      double s = 0.0;
      for (int n = r; n <= deg; ++n) {
        double binom = 1.0;
        for (int i = 0; i < r; ++i) binom *= static_cast<double>(n - i) / (i + 1);
        s += monomial_coeffs[n] * binom * std::pow(lambda, n - r);
      }
      q(row, col) = s;
    }
  }
  return (p - q).cwiseAbs().maxCoeff() < 1e-11;
}

std::string jordan_spec_to_json(const JordanSpec& spec) {
  nlohmann::json j;
  j["blocks"] = nlohmann::json::array();
  for (const auto& b : spec.blocks)
    j["blocks"].push_back({{"lambda", b.lambda}, {"size", b.size}, {"offdiag", b.offdiag}});
  if (std::holds_alternative<std::monostate>(spec.similarity)) {
    j["similarity"] = "none";
  } else if (const auto* os = std::get_if<OrthogonalSimilarity>(&spec.similarity)) {
    j["similarity"] = "orthogonal-random(" + std::to_string(os->seed) + ")";
  } else {
    const auto& z = std::get<DenseMatrix>(spec.similarity);
    auto rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < z.rows(); ++r) {
      auto row = nlohmann::json::array();
      for (Eigen::Index c = 0; c < z.cols(); ++c) row.push_back(z(r, c));
      rows.push_back(row);
    }
    j["similarity"] = rows;
  }
  return j.dump(2);
}

JordanSpec jordan_spec_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  JordanSpec spec;
  for (const auto& jb : j.at("blocks")) {
    JordanBlockSpec b;
    b.lambda = jb.at("lambda").get<double>();
    b.size = jb.at("size").get<int>();
    b.offdiag = jb.value("offdiag", 1.0);
    spec.blocks.push_back(b);
  }
  if (!j.contains("similarity") || j["similarity"] == "none") {
    spec.similarity = std::monostate{};
  } else if (j["similarity"].is_string()) {
    const std::string s = j["similarity"].get<std::string>();
    const std::string prefix = "orthogonal-random(";
    if (s.rfind(prefix, 0) != 0 || s.back() != ')')
      throw std::invalid_argument("JordanSpec: unknown similarity '" + s + "'");
    spec.similarity =
        OrthogonalSimilarity{std::stoull(s.substr(prefix.size(), s.size() - prefix.size() - 1))};
  } else {
    const auto& rows = j["similarity"];
    const int k = static_cast<int>(rows.size());
    DenseMatrix z(k, k);
    for (int r = 0; r < k; ++r)
      for (int c = 0; c < k; ++c) z(r, c) = rows.at(r).at(c).get<double>();
    spec.similarity = z;
  }
  return spec;
}

JordanSpec read_jordan_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return jordan_spec_from_json(ss.str());
}

}  // namespace chebmat
