#include "chebmat/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "chebmat/builtins.hpp"
#include "chebmat/jordan.hpp"
#include "chebmat/mat_eval.hpp"
#include "chebmat/rng.hpp"

namespace chebmat {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<int> all_ns(int max_n) {
  std::vector<int> ns(max_n + 1);
  std::iota(ns.begin(), ns.end(), 0);
  return ns;
}

std::vector<double> abs_coeffs(const ChebCoeffs& c) {
  std::vector<double> a(c.coeffs.size());
  std::transform(c.coeffs.begin(), c.coeffs.end(), a.begin(),
                 [](double v) { return std::abs(v); });
  return a;
}

double median_in_window(const ConvergenceReport& r, double n_lo, double n_hi) {
  std::vector<double> vals;
  for (std::size_t i = 0; i < r.ns.size(); ++i)
    if (r.ns[i] >= n_lo && r.ns[i] <= n_hi) vals.push_back(r.errors[i]);
  if (vals.empty()) throw std::runtime_error("median_in_window: empty window");
  std::sort(vals.begin(), vals.end());
  const std::size_t m = vals.size() / 2;
  return vals.size() % 2 ? vals[m] : 0.5 * (vals[m - 1] + vals[m]);
}

double rounding_floor(const ConvergenceReport& r) {
  return 1e-10 * (1.0 + r.error_scale);
}

}  // namespace

DenseMatrix goe_symmetric(std::uint64_t seed, int k, double lo, double hi) {
  if (k < 2) throw std::invalid_argument("goe_symmetric: order must be >= 2");
  Rng rng(seed);
  const Eigen::MatrixXd g = gaussian_matrix(rng, k, k);
  DenseMatrix a = 0.5 * (g + g.transpose());
  const Eigen::SelfAdjointEigenSolver<DenseMatrix> es(a, Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues().minCoeff();
  const double lmax = es.eigenvalues().maxCoeff();
  const double alpha = (hi - lo) / (lmax - lmin);
  const double beta = lo - alpha * lmin;
  a = alpha * a;
  a.diagonal().array() += beta;
  return a;
}

ConvergenceReport run_symmetric_experiment(const ScalarFunction& f, int k, std::uint64_t seed,
                                           int max_n) {
  const DenseMatrix a = goe_symmetric(seed, k);
  const Eigen::SelfAdjointEigenSolver<DenseMatrix> es(a);
  Eigen::VectorXd flam(k);
  for (int i = 0; i < k; ++i) flam[i] = f(es.eigenvalues()[i]);
  const DenseMatrix truth =
      es.eigenvectors() * flam.asDiagonal() * es.eigenvectors().transpose();

  const ChebCoeffs c = cheb_coeffs(f, max_n);

  ConvergenceReport r;
  r.function_label = f.label();
  r.matrix_desc = "sym" + std::to_string(k);
  r.seed = seed;
  r.ns = all_ns(max_n);
  r.coeff_abs = abs_coeffs(c);
  r.errors = truncation_error_sweep(c, a, truth, r.ns);
  const double kappa =
      es.eigenvalues().cwiseAbs().maxCoeff() / es.eigenvalues().cwiseAbs().minCoeff();
  r.normalized_errors.resize(r.errors.size());
  std::transform(r.errors.begin(), r.errors.end(), r.normalized_errors.begin(),
                 [&](double e) { return e / kappa; });
  r.error_scale = flam.cwiseAbs().maxCoeff();

  if (f.label() == "f1") {
    r.theoretical_slope = -2.0;
  } else if (f.label() == "f2") {
    r.theoretical_slope = -1.0;
  } else {
    r.theoretical_slope = kNaN;  // super-algebraic
  }
  // Preasymptotic cutoff at N = 100 for the algebraic-rate functions; f3
  // reaches rounding long before that, so its window sits in the decaying
  // range.
  if (f.label() == "f3") {
    r.window_lo = std::min(10, max_n / 2);
    r.window_hi = std::min(60, max_n);
  } else {
    r.window_lo = std::min(100, max_n / 2);
    r.window_hi = max_n;
  }
  r.fitted_slope = estimate_slope(r, r.window_lo, r.window_hi);
  r.converged = classify_convergence(r);
  return r;
}

std::vector<ConvergenceReport> run_jordan_size_experiment(double lambda,
                                                          const std::vector<int>& sizes,
                                                          int max_n) {
  const ScalarFunction f4 = make_f4();
  const ChebCoeffs c = cheb_coeffs(f4, max_n);
  std::vector<ConvergenceReport> reports;
  for (int m : sizes) {
    const JordanSpec spec{{{lambda, m, 1.0}}, std::monostate{}};
    const DenseMatrix j = build_jordan_matrix(spec);
    const DenseMatrix truth = f_of_matrix_via_jordan(f4, spec);

    ConvergenceReport r;
    r.function_label = f4.label();
    r.matrix_desc = spec.describe();
    r.ns = all_ns(max_n);
    r.coeff_abs = abs_coeffs(c);
    r.errors = truncation_error_sweep(c, j, truth, r.ns);
    r.error_scale = spectral_norm(truth);
    r.window_lo = std::max(1, max_n / 10);
    r.window_hi = max_n;
    // f4 has f^(3) of bounded variation but not f^(4): the guaranteed rate
    // for a single interior block of size m is N^-(4-m), and none for m >= 4.
    r.theoretical_slope = m <= 3 ? -(4.0 - m) : kNaN;
    r.fitted_slope = estimate_slope(r, r.window_lo, r.window_hi);
    r.converged = classify_convergence(r);
    reports.push_back(std::move(r));
  }
  return reports;
}

std::vector<ConvergenceReport> run_block_structure_experiment(int max_n) {
  const ScalarFunction f3 = make_f3();
  const ChebCoeffs c = cheb_coeffs(f3, max_n);
  const std::vector<std::pair<std::string, std::vector<int>>> layouts = {
      {"blocks10", {10}}, {"blocks5_5", {5, 5}}, {"blocks2x5", {2, 2, 2, 2, 2}}};
  std::vector<ConvergenceReport> reports;
  auto run_one = [&](const std::string& name, const std::vector<int>& sizes, int replicas) {
    JordanSpec spec;
    for (int rep = 0; rep < replicas; ++rep)
      for (int s : sizes) spec.blocks.push_back({0.5, s, 0.5});
    const DenseMatrix j = build_jordan_matrix(spec);
    const DenseMatrix truth = f_of_matrix_via_jordan(f3, spec);

    ConvergenceReport r;
    r.function_label = f3.label();
    r.matrix_desc = name + (replicas == 2 ? "_x2" : "");
    r.ns = all_ns(max_n);
    r.coeff_abs = abs_coeffs(c);
    r.errors = truncation_error_sweep(c, j, truth, r.ns);
    r.error_scale = spectral_norm(truth);
    r.window_lo = 20;
    r.window_hi = max_n;
    r.theoretical_slope = kNaN;  // geometric decay until rounding
    r.fitted_slope = estimate_slope(r, r.window_lo, r.window_hi);
    r.converged = classify_convergence(r);
    reports.push_back(std::move(r));
  };
  for (const auto& [name, sizes] : layouts) run_one(name, sizes, 1);
  for (const auto& [name, sizes] : layouts) run_one(name, sizes, 2);
  return reports;
}

double estimate_slope(const ConvergenceReport& report, int n_lo, int n_hi) {
  const double floor = 100.0 * std::numeric_limits<double>::epsilon() * report.error_scale;
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < report.ns.size(); ++i) {
    const int n = report.ns[i];
    if (n < n_lo || n > n_hi || n == 0) continue;
    if (report.errors[i] <= floor) continue;
    xs.push_back(std::log(static_cast<double>(n)));
    ys.push_back(std::log(report.errors[i]));
  }
  if (xs.size() < 5)
    throw std::runtime_error("estimate_slope: fewer than 5 usable points in window");
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  return sxy / sxx;
}

bool classify_convergence(const ConvergenceReport& report) {
  const int n_max = report.ns.back();
  if (n_max < 20) {
    // too short for the decade medians; judge the raw endpoints
    return report.errors.back() <= rounding_floor(report) ||
           report.errors.back() * 100.0 <= report.errors.front();
  }
  const double start = median_in_window(report, n_max / 10.0, n_max / 8.0);
  const double end = median_in_window(report, 0.8 * n_max, n_max);
  if (end <= rounding_floor(report)) return true;
  return start / end >= 100.0;
}

std::vector<double> decade_checkpoint_medians(const ConvergenceReport& report, int count) {
  if (count < 2) throw std::invalid_argument("decade_checkpoint_medians: count must be >= 2");
  const double n_max = report.ns.back();
  const double n_lo = n_max / 10.0;
  std::vector<double> meds;
  for (int i = 0; i < count; ++i) {
    const double nc = n_lo * std::pow(n_max / n_lo, static_cast<double>(i) / (count - 1));
    meds.push_back(median_in_window(report, 0.93 * nc, 1.07 * nc));
  }
  return meds;
}

double BoundCheckConfig::nu() const {
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("BoundCheckConfig: delta must be in (0,1)");
  return 1.0 / std::sqrt(2.0 * delta * (1.0 - delta));
}

bool check_derivative_bounds(const BoundCheckConfig& cfg) {
  const double v = cfg.nu();
  const int kmax = cfg.max_order;
  const int nmax = cfg.max_degree;
  for (int g = 0; g < cfg.grid_points; ++g) {
    const double x = -1.0 + cfg.delta +
                     (2.0 - 2.0 * cfg.delta) * g / std::max(1, cfg.grid_points - 1);
    for (int n = 0; n <= nmax; ++n) {
      for (int k = 0; k <= std::min(kmax, n); ++k) {
        const double t = std::abs(cheb_poly_derivative(n, k, x));
        const double at_one = cheb_poly_derivative_at_one(n, k);
        if (t > at_one * (1.0 + 1e-12) + 1e-9) return false;
        if (k == 0) {
          if (t > 1.0 + 1e-12) return false;
          continue;
        }
        const double leading = std::pow(v, k) * std::pow(n, k);
        const double second = 0.5 * k * (k - 1) * std::pow(v, k + 1) * std::pow(n, k - 1);
        const double lot = 0.5 * k * (k + 1);
        const double slack = lot * lot * std::pow(v, k + 2) * std::pow(n, k - 2);
        if (t > leading + second + slack) return false;
        if (k == 1 && t * std::sqrt(1.0 - x * x) > n + 1e-9) return false;
      }
    }
  }
  return true;
}

FigureResult run_figure(const std::string& name, std::uint64_t seed, int max_n) {
  FigureResult fig;
  fig.name = name;
  std::ostringstream detail;

  if (name == "fig1" || name == "fig2") {
    if (max_n == 0) max_n = 2000;
    const ScalarFunction f = name == "fig1" ? make_f1() : make_f2();
    ConvergenceReport r = run_symmetric_experiment(f, 10, seed, max_n);
    const double lo = name == "fig1" ? -2.4 : -1.35;
    const double hi = name == "fig1" ? -1.6 : -0.7;
    fig.pass = r.fitted_slope >= lo && r.fitted_slope <= hi;
    detail << name << " " << f.label() << " slope=" << r.fitted_slope << " window=["
           << r.window_lo << "," << r.window_hi << "] accepted=[" << lo << "," << hi << "]";
    fig.reports.push_back(std::move(r));
  } else if (name == "fig3a") {
    if (max_n == 0) max_n = 2000;
    fig.reports = run_jordan_size_experiment(0.7, {2, 3, 4}, max_n);
    const auto& m2 = fig.reports[0];
    const auto& m3 = fig.reports[1];
    const auto& m4 = fig.reports[2];
    auto monotone = [](const ConvergenceReport& r) {
      const auto meds = decade_checkpoint_medians(r, 5);
      for (std::size_t i = 1; i < meds.size(); ++i)
        if (!(meds[i] < meds[i - 1])) return false;
      return true;
    };
    // Error levels at N = max_n, calibrated once against the oracle and
    // frozen (the guaranteed-rate blocks land orders of magnitude below the
    // m=4 block).
    const bool levels = m2.errors.back() < 1e-8 && m3.errors.back() < 1e-6 &&
                        median_in_window(m4, 0.8 * max_n, max_n) > 1e-5;
    fig.pass = m2.converged && m3.converged && monotone(m2) && monotone(m3) &&
               !m4.converged && levels;
    detail << "fig3a m=2 conv=" << m2.converged << " m=3 conv=" << m3.converged
           << " m=4 conv=" << m4.converged << " e(m2)=" << m2.errors.back()
           << " e(m3)=" << m3.errors.back() << " e(m4)=" << m4.errors.back();
  } else if (name == "fig3b") {
    if (max_n == 0) max_n = 2000;
    for (double lambda : {0.4, 0.7, 1.0}) {
      auto rs = run_jordan_size_experiment(lambda, {3}, max_n);
      fig.reports.push_back(std::move(rs[0]));
    }
    fig.pass = fig.reports[0].converged && fig.reports[1].converged &&
               !fig.reports[2].converged;
    detail << "fig3b conv(0.4)=" << fig.reports[0].converged
           << " conv(0.7)=" << fig.reports[1].converged
           << " conv(1.0)=" << fig.reports[2].converged;
  } else if (name == "fig4") {
    if (max_n == 0) max_n = 200;
    fig.reports = run_block_structure_experiment(max_n);
    bool ordered = true;
    const auto& b10 = fig.reports[0];
    const auto& b55 = fig.reports[1];
    const auto& b2 = fig.reports[2];
    for (std::size_t i = 0; i < b10.ns.size(); ++i) {
      if (b10.ns[i] < 20) continue;
      if (b10.errors[i] < b55.errors[i] - 1e-13 || b55.errors[i] < b2.errors[i] - 1e-13)
        ordered = false;
    }
    double dup = 0.0;
    for (int v = 0; v < 3; ++v)
      for (std::size_t i = 0; i < b10.ns.size(); ++i)
        dup = std::max(dup,
                       std::abs(fig.reports[v].errors[i] - fig.reports[v + 3].errors[i]));
    fig.pass = ordered && dup < 1e-13;
    detail << "fig4 ordered=" << ordered << " duplication_max_diff=" << dup;
  } else {
    throw std::invalid_argument("run_figure: unknown figure '" + name + "'");
  }
  fig.detail = detail.str();
  return fig;
}

void write_report_csv(const ConvergenceReport& report, std::ostream& out) {
  out << "N,coeff_abs,error,normalized_error\n";
  char buf[64];
  auto fmt = [&](double x) {
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return std::string(buf);
  };
  for (std::size_t i = 0; i < report.ns.size(); ++i) {
    const int n = report.ns[i];
    out << n << ",";
    out << (n < static_cast<int>(report.coeff_abs.size()) ? fmt(report.coeff_abs[n]) : "");
    out << "," << fmt(report.errors[i]) << ",";
    if (!report.normalized_errors.empty()) out << fmt(report.normalized_errors[i]);
    out << "\n";
  }
}

std::string report_to_json(const ConvergenceReport& report) {
  nlohmann::json j;
  j["function"] = report.function_label;
  j["matrix"] = report.matrix_desc;
  j["seed"] = report.seed;
  j["window"] = {report.window_lo, report.window_hi};
  j["fitted_slope"] = report.fitted_slope;
  if (std::isnan(report.theoretical_slope))
    j["theoretical_slope"] = nullptr;
  else
    j["theoretical_slope"] = report.theoretical_slope;
  j["converged"] = report.converged;
  j["error_scale"] = report.error_scale;
  j["N"] = report.ns;
  j["coeff_abs"] = report.coeff_abs;
  j["errors"] = report.errors;
  j["normalized_errors"] = report.normalized_errors;
  return j.dump(2);
}

std::string report_basename(const ConvergenceReport& report, const std::string& experiment) {
  std::ostringstream ss;
  ss << experiment << "__" << report.function_label << "__" << report.matrix_desc << "__"
     << report.seed;
  return ss.str();
}

}  // namespace chebmat
