#include "chebmat/cheb_scalar.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "chebmat/dct.hpp"

namespace chebmat {

namespace {

void require_domain(double x) {
  if (!(std::abs(x) <= 1.0))
    throw std::domain_error("chebmat: argument outside [-1,1]");
}

}  // namespace

ChebCoeffs ChebCoeffs::from_values(std::vector<double> values, int samples) {
  if (values.empty()) throw std::invalid_argument("ChebCoeffs: empty coefficient vector");
  ChebCoeffs c;
  c.degree = static_cast<int>(values.size()) - 1;
  c.samples = samples;
  c.coeffs = std::move(values);
  return c;
}

bool ScalarFunction::near_kink(double x, double guard) const {
  return std::any_of(kinks_.begin(), kinks_.end(),
                     [&](double k) { return std::abs(x - k) <= guard; });
}

double ScalarFunction::derivative(double x, int order) const {
  if (order == 0) return eval_(x);
  if (!deriv_)
    throw CapabilityError("ScalarFunction '" + label_ + "': no derivative registry");
  if (near_kink(x))
    throw CapabilityError("ScalarFunction '" + label_ + "': derivative requested at kink x=" +
                          std::to_string(x));
  return deriv_(x, order);
}

double cheb_poly(int n, double x) {
  if (n < 0) throw std::invalid_argument("cheb_poly: negative degree");
  require_domain(x);
  if (n == 0) return 1.0;
  if (n == 1) return x;
  double tm1 = 1.0, t = x;
  for (int i = 2; i <= n; ++i) {
    const double tn = 2.0 * x * t - tm1;
    tm1 = t;
    t = tn;
  }
  return t;
}

double cheb_poly_derivative(int n, int k, double x) {
  if (n < 0 || k < 0) throw std::invalid_argument("cheb_poly_derivative: negative argument");
  require_domain(x);
  if (k > n) return 0.0;
  if (k == 0) return cheb_poly(n, x);
  // d[j] tracks T_i^(j)(x) for the running degree i.
  std::vector<double> prev(k + 1, 0.0), cur(k + 1, 0.0), next(k + 1, 0.0);
  prev[0] = 1.0;  // T_0
  cur[0] = x;     // T_1
  if (k >= 1) cur[1] = 1.0;
  if (n == 1) return cur[k];
  for (int i = 2; i <= n; ++i) {
    for (int j = 0; j <= k; ++j) {
      next[j] = 2.0 * x * cur[j] - prev[j];
      if (j >= 1) next[j] += 2.0 * j * cur[j - 1];
    }
    std::swap(prev, cur);
    std::swap(cur, next);
  }
  return cur[k];
}

double cheb_poly_derivative_at_one(int n, int k) {
  if (n < 0 || k < 0) throw std::invalid_argument("cheb_poly_derivative_at_one: negative argument");
  if (k > n) return 0.0;
  double v = 1.0;
  const double n2 = static_cast<double>(n) * n;
  for (int i = 0; i < k; ++i) v *= (n2 - static_cast<double>(i) * i) / (2.0 * i + 1.0);
  return v;
}

int default_sample_count(int N) { return std::max(2 * (N + 1), 512); }

ChebCoeffs cheb_coeffs(const ScalarFunction& f, int N, int M) {
  if (N < 0) throw std::invalid_argument("cheb_coeffs: negative degree");
  if (M == 0) M = default_sample_count(N);
  if (M < N + 1) throw std::invalid_argument("cheb_coeffs: sample count M < N+1");
  Eigen::VectorXd samples(M);
  for (int j = 0; j < M; ++j)
    samples[j] = f(std::cos(std::numbers::pi * (j + 0.5) / M));
  const Eigen::VectorXd y = dct::dct2(samples);
  ChebCoeffs c;
  c.degree = N;
  c.samples = M;
  c.coeffs.resize(N + 1);
  for (int n = 0; n <= N; ++n) c.coeffs[n] = y[n] / M;
  return c;
}

ChebCoeffs cheb_coeffs_from_samples(const std::vector<double>& samples, int N) {
  const int M = static_cast<int>(samples.size());
  if (N < 0) throw std::invalid_argument("cheb_coeffs_from_samples: negative degree");
  if (M < N + 1) throw std::invalid_argument("cheb_coeffs_from_samples: sample count M < N+1");
  Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(samples.data(), M);
  const Eigen::VectorXd y = dct::dct2(v);
  ChebCoeffs c;
  c.degree = N;
  c.samples = M;
  c.coeffs.resize(N + 1);
  for (int n = 0; n <= N; ++n) c.coeffs[n] = y[n] / M;
  return c;
}

double eval_cheb_scalar(const ChebCoeffs& c, double x) {
  require_domain(x);
  double d = 0.0, dd = 0.0;
  for (int n = c.degree; n >= 1; --n) {
    const double sv = d;
    d = 2.0 * x * d - dd + c.coeffs[n];
    dd = sv;
  }
  return x * d - dd + 0.5 * c.coeffs[0];
}

double aliasing_drift(const ScalarFunction& f, int N, int M) {
  if (M == 0) M = default_sample_count(N);
  const ChebCoeffs a = cheb_coeffs(f, N, M);
  const ChebCoeffs b = cheb_coeffs(f, N, 2 * M);
  double drift = 0.0;
  for (int n = 0; n <= N; ++n) drift = std::max(drift, std::abs(a.coeffs[n] - b.coeffs[n]));
  return drift;
}

std::string coeffs_to_json(const ChebCoeffs& c) {
  nlohmann::json j;
  j["degree"] = c.degree;
  j["samples"] = c.samples;
  j["coeffs"] = c.coeffs;
  return j.dump(2);
}

ChebCoeffs coeffs_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  ChebCoeffs c;
  c.degree = j.at("degree").get<int>();
  c.samples = j.at("samples").get<int>();
  c.coeffs = j.at("coeffs").get<std::vector<double>>();
  if (static_cast<int>(c.coeffs.size()) != c.degree + 1)
    throw std::invalid_argument("coeffs_from_json: degree/coeffs length mismatch");
  return c;
}

void write_coeffs_json(const ChebCoeffs& c, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << coeffs_to_json(c) << "\n";
}

ChebCoeffs read_coeffs_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return coeffs_from_json(ss.str());
}

void write_coeffs_csv(const ChebCoeffs& c, std::ostream& out) {
  out << "index,value\n";
  char buf[64];
  for (int n = 0; n <= c.degree; ++n) {
    std::snprintf(buf, sizeof(buf), "%.17g", c.coeffs[n]);
    out << n << "," << buf << "\n";
  }
}

}  // namespace chebmat
