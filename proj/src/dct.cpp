#include "chebmat/dct.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace chebmat::dct {

namespace {

// FFTW plan creation is not thread-safe; executing a plan on fresh arrays is.
// Plans are cached per (size, kind) and executed with the new-array interface
// on fftw_alloc'd scratch, so concurrent transforms never share buffers.
std::mutex plan_mutex;

fftw_plan get_plan(int n, fftw_r2r_kind kind) {
  static std::map<std::pair<int, int>, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(plan_mutex);
  auto key = std::make_pair(n, static_cast<int>(kind));
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  double* in = fftw_alloc_real(n);
  double* out = fftw_alloc_real(n);
  fftw_plan plan = fftw_plan_r2r_1d(n, in, out, kind, FFTW_ESTIMATE);
  fftw_free(in);
  fftw_free(out);
  if (!plan) throw std::runtime_error("fftw plan creation failed");
  cache.emplace(key, plan);
  return plan;
}

struct FftwDeleter {
  void operator()(double* p) const { fftw_free(p); }
};
using FftwBuffer = std::unique_ptr<double[], FftwDeleter>;

void run(const double* in, double* out, int n, fftw_r2r_kind kind) {
  if (n <= 0) throw std::invalid_argument("dct: empty input");
  fftw_plan plan = get_plan(n, kind);
  FftwBuffer a(fftw_alloc_real(n));
  FftwBuffer b(fftw_alloc_real(n));
  std::copy(in, in + n, a.get());
  fftw_execute_r2r(plan, a.get(), b.get());
  std::copy(b.get(), b.get() + n, out);
}

}  // namespace

void dct2(const double* in, double* out, int n) { run(in, out, n, FFTW_REDFT10); }
void dct3(const double* in, double* out, int n) { run(in, out, n, FFTW_REDFT01); }

Eigen::VectorXd dct2(const Eigen::VectorXd& x) {
  Eigen::VectorXd y(x.size());
  dct2(x.data(), y.data(), static_cast<int>(x.size()));
  return y;
}

Eigen::VectorXd dct3(const Eigen::VectorXd& x) {
  Eigen::VectorXd y(x.size());
  dct3(x.data(), y.data(), static_cast<int>(x.size()));
  return y;
}

Eigen::VectorXd dct2_naive(const Eigen::VectorXd& x) {
  const auto m = x.size();
  Eigen::VectorXd y(m);
  for (Eigen::Index n = 0; n < m; ++n) {
    double s = 0.0;
    for (Eigen::Index j = 0; j < m; ++j)
      s += x[j] * std::cos(std::numbers::pi * n * (j + 0.5) / m);
    y[n] = 2.0 * s;
  }
  return y;
}

Eigen::VectorXd dct3_naive(const Eigen::VectorXd& x) {
  const auto m = x.size();
  Eigen::VectorXd y(m);
  for (Eigen::Index j = 0; j < m; ++j) {
    double s = x[0];
    for (Eigen::Index n = 1; n < m; ++n)
      s += 2.0 * x[n] * std::cos(std::numbers::pi * n * (j + 0.5) / m);
    y[j] = s;
  }
  return y;
}

}  // namespace chebmat::dct
