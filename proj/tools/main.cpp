// chebmat: matrix functions via truncated Chebyshev expansions.
//
// Subcommands: coeffs, eval, experiment, recover. Every run writes a manifest
// next to its outputs. Exit codes: 0 ok, 2 bad arguments/unknown name,
// 3 spectral bounds violated, 4 experiment acceptance violation,
// 5 recovery did not converge, 1 other runtime failure.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "chebmat/builtins.hpp"
#include "chebmat/cheb_scalar.hpp"
#include "chebmat/dense_matrix.hpp"
#include "chebmat/experiments.hpp"
#include "chebmat/jordan.hpp"
#include "chebmat/manifest.hpp"
#include "chebmat/mat_eval.hpp"
#include "chebmat/rng.hpp"
#include "chebmat/spectral_filter.hpp"

#include <Eigen/Core>

namespace {

using namespace chebmat;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitSpectralBounds = 3;
constexpr int kExitAcceptance = 4;
constexpr int kExitNotConverged = 5;

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

std::vector<double> read_values_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<double> vals;
  double v;
  while (in >> v) vals.push_back(v);
  if (vals.empty()) throw std::runtime_error(path + ": no values");
  return vals;
}

std::string manifest_path_for(const std::string& output) { return output + ".manifest.json"; }

// --- coeffs -----------------------------------------------------------------

struct CoeffsArgs {
  std::string function;
  int degree = 0;
  int samples = 0;
  std::string out = "coeffs.json";
  std::string csv;
  bool check_aliasing = false;
  double center = 0.0, half_width = 0.1, steepness = 0.05;
};

int run_coeffs(const CoeffsArgs& a) {
  Timer timer;
  RunManifest m;
  m.command = "coeffs";
  m.flags = {{"function", a.function},
             {"degree", std::to_string(a.degree)},
             {"samples", std::to_string(a.samples)},
             {"out", a.out},
             {"check-aliasing", a.check_aliasing ? "true" : "false"}};
  if (!a.csv.empty()) m.flags["csv"] = a.csv;
  if (a.function == "filter") {
    m.flags["center"] = std::to_string(a.center);
    m.flags["half-width"] = std::to_string(a.half_width);
    m.flags["steepness"] = std::to_string(a.steepness);
  }

  ChebCoeffs c;
  std::string label = a.function;
  if (a.function.rfind("tab:", 0) == 0) {
    const std::string path = a.function.substr(4);
    m.input_hashes[path] = fnv1a64_file(path);
    c = cheb_coeffs_from_samples(read_values_file(path), a.degree);
  } else if (a.function == "filter") {
    c = cheb_coeffs(make_erf_filter(a.center, a.half_width, a.steepness), a.degree, a.samples);
  } else {
    auto f = builtin_function(a.function);
    if (!f) {
      std::cerr << "chebmat coeffs: unknown function '" << a.function
                << "' (expected f1..f4, filter, or tab:<file>)\n";
      return kExitUsage;
    }
    if (a.check_aliasing) {
      const double drift = aliasing_drift(*f, a.degree, a.samples);
      if (drift > 1e-10)
        std::cerr << "warning: coefficients move by " << drift
                  << " when doubling the sample count; increase --samples\n";
    }
    c = cheb_coeffs(*f, a.degree, a.samples);
  }

  nlohmann::json j = nlohmann::json::parse(coeffs_to_json(c));
  j["function"] = label;
  {
    std::ofstream out(a.out);
    if (!out) throw std::runtime_error("cannot open " + a.out);
    out << j.dump(2) << "\n";
  }
  m.outputs.push_back(a.out);
  if (!a.csv.empty()) {
    std::ofstream out(a.csv);
    if (!out) throw std::runtime_error("cannot open " + a.csv);
    write_coeffs_csv(c, out);
    m.outputs.push_back(a.csv);
  }
  m.wall_time_s = timer.seconds();
  write_manifest(m, manifest_path_for(a.out));
  std::cout << "wrote " << a.out << " (degree " << c.degree << ", " << c.samples
            << " samples)\n";
  return kExitOk;
}

// --- eval -------------------------------------------------------------------

struct EvalArgs {
  std::string coeffs_path;
  std::string matrix_path;
  std::string jordan_path;
  std::string mode = "clenshaw";
  std::string out = "eval_out.txt";
};

int run_eval(const EvalArgs& a) {
  Timer timer;
  RunManifest m;
  m.command = "eval";
  m.flags = {{"coeffs", a.coeffs_path}, {"mode", a.mode}, {"out", a.out}};
  m.input_hashes[a.coeffs_path] = fnv1a64_file(a.coeffs_path);

  std::ifstream cin_file(a.coeffs_path);
  if (!cin_file) throw std::runtime_error("cannot open " + a.coeffs_path);
  std::ostringstream ss;
  ss << cin_file.rdbuf();
  const auto cj = nlohmann::json::parse(ss.str());
  const ChebCoeffs c = coeffs_from_json(ss.str());
  const std::string function_label = cj.value("function", "");

  DenseMatrix matrix;
  std::optional<JordanSpec> spec;
  if (!a.jordan_path.empty()) {
    m.flags["jordan"] = a.jordan_path;
    m.input_hashes[a.jordan_path] = fnv1a64_file(a.jordan_path);
    spec = read_jordan_spec(a.jordan_path);
    if (spec->spectral_radius() > 1.0) {
      std::cerr << "chebmat eval: spectral radius " << spec->spectral_radius()
                << " exceeds 1; rescale the spec\n";
      return kExitSpectralBounds;
    }
    matrix = build_jordan_matrix(*spec);
  } else {
    m.flags["matrix"] = a.matrix_path;
    m.input_hashes[a.matrix_path] = fnv1a64_file(a.matrix_path);
    matrix = read_matrix(a.matrix_path);
  }

  const DenseMatrix result =
      a.mode == "direct" ? direct_sum_matrix(c, matrix) : clenshaw_matrix(c, matrix);
  write_matrix(result, a.out);
  m.outputs.push_back(a.out);

  if (spec) {
    auto f = builtin_function(function_label);
    if (f && (f->has_derivatives() || spec->largest_block() == 1)) {
      const DenseMatrix truth = f_of_matrix_via_jordan(*f, *spec);
      const double err = matrix_error(result, truth);
      nlohmann::json rj;
      rj["oracle_error_spectral"] = err;
      rj["function"] = function_label;
      const std::string report = a.out + ".report.json";
      std::ofstream out(report);
      out << rj.dump(2) << "\n";
      m.outputs.push_back(report);
      std::cout << "oracle error (spectral norm): " << err << "\n";
    }
  }
  m.wall_time_s = timer.seconds();
  write_manifest(m, manifest_path_for(a.out));
  std::cout << "wrote " << a.out << "\n";
  return kExitOk;
}

// --- experiment ---------------------------------------------------------------

struct ExperimentArgs {
  std::string name;
  std::int64_t seed = -1;  // -1: per-figure frozen default
  std::string out_dir = ".";
  int max_n = 0;
};

std::uint64_t default_seed_for(const std::string& name) {
  if (name == "fig1") return kFig1DefaultSeed;
  if (name == "fig2") return kFig2DefaultSeed;
  if (name == "fig4") return kFig4DefaultSeed;
  return kFig3DefaultSeed;
}

int run_experiment(const ExperimentArgs& a) {
  Timer timer;
  const std::uint64_t seed =
      a.seed >= 0 ? static_cast<std::uint64_t>(a.seed) : default_seed_for(a.name);
  RunManifest m;
  m.command = "experiment";
  m.seed = seed;
  m.flags = {{"name", a.name},
             {"seed", std::to_string(seed)},
             {"out-dir", a.out_dir},
             {"max-n", std::to_string(a.max_n)},
             {"seed_rule", "streams = splitmix64(seed xor k*0x9E3779B97F4A7C15)"}};

  FigureResult fig;
  try {
    fig = run_figure(a.name, seed, a.max_n);
  } catch (const std::invalid_argument& e) {
    std::cerr << "chebmat experiment: " << e.what() << "\n";
    return kExitUsage;
  }

  for (const auto& report : fig.reports) {
    const std::string base = a.out_dir + "/" + report_basename(report, a.name);
    {
      std::ofstream out(base + ".csv");
      if (!out) throw std::runtime_error("cannot open " + base + ".csv");
      write_report_csv(report, out);
    }
    {
      std::ofstream out(base + ".json");
      out << report_to_json(report) << "\n";
    }
    m.outputs.push_back(base + ".csv");
    m.outputs.push_back(base + ".json");
  }
  m.wall_time_s = timer.seconds();
  write_manifest(m, a.out_dir + "/" + a.name + ".manifest.json");
  std::cout << (fig.pass ? "[PASS] " : "[FAIL] ") << fig.detail << "\n";
  return fig.pass ? kExitOk : kExitAcceptance;
}

// --- recover --------------------------------------------------------------------

struct RecoverArgs {
  std::string operator_spec;
  double center = 0.0, half_width = 0.1, steepness = 0.05;
  int degree = 10;
  int block = 1;
  int max_passes = 12;
  double tol = 1e-10;
  std::uint64_t seed = 0;
  std::string scale;  // "lo,hi"
  std::string out = "recovery.json";
  std::string basis_out;
};

std::unique_ptr<LinearOperator> make_operator(const std::string& spec, RunManifest& m) {
  auto load = [&](const std::string& path) {
    m.input_hashes[path] = fnv1a64_file(path);
    return path;
  };
  if (spec.rfind("dct:", 0) == 0) {
    auto vals = read_values_file(load(spec.substr(4)));
    Eigen::VectorXd s = Eigen::Map<Eigen::VectorXd>(vals.data(), vals.size());
    return std::make_unique<DctOperator>(std::move(s));
  }
  if (spec.rfind("diag:", 0) == 0) {
    auto vals = read_values_file(load(spec.substr(5)));
    Eigen::VectorXd s = Eigen::Map<Eigen::VectorXd>(vals.data(), vals.size());
    return std::make_unique<DiagonalOperator>(std::move(s));
  }
  const std::string path = spec.rfind("dense:", 0) == 0 ? spec.substr(6) : spec;
  return std::make_unique<DenseOperator>(read_matrix(load(path)));
}

int run_recover(const RecoverArgs& a) {
  Timer timer;
  RunManifest m;
  m.command = "recover";
  m.seed = a.seed;
  m.flags = {{"operator", a.operator_spec},
             {"center", std::to_string(a.center)},
             {"half-width", std::to_string(a.half_width)},
             {"steepness", std::to_string(a.steepness)},
             {"degree", std::to_string(a.degree)},
             {"block", std::to_string(a.block)},
             {"tol", std::to_string(a.tol)},
             {"seed", std::to_string(a.seed)},
             {"max-passes", std::to_string(a.max_passes)},
             {"seed_rule", "streams = splitmix64(seed xor k*0x9E3779B97F4A7C15)"},
             {"out", a.out}};
  if (!a.basis_out.empty()) m.flags["basis-out"] = a.basis_out;

  std::unique_ptr<LinearOperator> op = make_operator(a.operator_spec, m);

  FilterParams params{a.center, a.half_width, a.steepness};
  std::unique_ptr<LinearOperator> scaled;
  const LinearOperator* target = op.get();
  SpectralScaling scaling;
  bool rescaled = false;
  if (!a.scale.empty()) {
    const auto comma = a.scale.find(',');
    if (comma == std::string::npos) {
      std::cerr << "chebmat recover: --scale expects lo,hi\n";
      return kExitUsage;
    }
    scaling.lo = std::stod(a.scale.substr(0, comma));
    scaling.hi = std::stod(a.scale.substr(comma + 1));
    if (!(scaling.lo < scaling.hi)) {
      std::cerr << "chebmat recover: --scale expects lo < hi\n";
      return kExitUsage;
    }
    // The erf family is closed under the affine spectrum map, so the filter
    // follows the operator into [-1,1].
    const double span = (scaling.hi - scaling.lo) / 2.0;
    params.center = scaling.scale_point(a.center);
    params.half_width = a.half_width / span;
    params.steepness = a.steepness / span;
    scaled = std::make_unique<ScaledOperator>(*op, scaling.lo, scaling.hi);
    target = scaled.get();
    rescaled = true;
    m.flags["scale"] = a.scale;
  }

  RecoveryConfig cfg;
  cfg.degree = a.degree;
  cfg.block_size = a.block;
  cfg.max_passes = a.max_passes;
  cfg.residual_tol = a.tol;
  cfg.seed = a.seed;
  RecoveryResult result = recover_eigenspace(*target, params, cfg);

  if (rescaled && result.dimension() > 0) {
    // Report the eigenvalue and residual against the original operator.
    const Eigen::MatrixXd au = op->apply(result.basis);
    double rq = 0.0;
    for (Eigen::Index j = 0; j < result.basis.cols(); ++j)
      rq += result.basis.col(j).dot(au.col(j));
    result.lambda_hat = rq / static_cast<double>(result.basis.cols());
    result.residual_history.back() = residual_metric(*op, result.basis, result.lambda_hat);
  }

  {
    std::ofstream out(a.out);
    if (!out) throw std::runtime_error("cannot open " + a.out);
    out << recovery_result_to_json(result) << "\n";
  }
  m.outputs.push_back(a.out);
  if (!a.basis_out.empty() && result.dimension() > 0) {
    // Basis dumps reuse the binary matrix container, zero-padded to square.
    DenseMatrix square = DenseMatrix::Zero(result.basis.rows(), result.basis.rows());
    square.leftCols(result.basis.cols()) = result.basis;
    write_matrix_binary(square, a.basis_out);
    m.outputs.push_back(a.basis_out);
  }
  m.wall_time_s = timer.seconds();
  write_manifest(m, manifest_path_for(a.out));

  std::cout << "dimension=" << result.dimension() << " lambda_hat=" << result.lambda_hat
            << " residual=" << (result.residual_history.empty() ? 0.0
                                                                : result.residual_history.back())
            << " passes=" << result.passes << " op_applications=" << result.op_applications
            << (result.converged ? "" : " NOT-CONVERGED")
            << (result.converged && result.dimension() == 0 ? " (converged-empty)" : "") << "\n";
  return result.converged ? kExitOk : kExitNotConverged;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* threads = std::getenv("CHEB_MATFUN_THREADS")) {
    const int t = std::atoi(threads);
    if (t > 0) Eigen::setNbThreads(t);
  }

  CLI::App app{"matrix functions via truncated Chebyshev expansions"};
  app.require_subcommand(1);
  app.set_version_flag("--version", chebmat::kToolVersion);

  CoeffsArgs ca;
  auto* coeffs = app.add_subcommand("coeffs", "compute expansion coefficients");
  coeffs->add_option("function", ca.function, "f1..f4, filter, or tab:<samples file>")
      ->required();
  coeffs->add_option("--degree", ca.degree, "truncation degree N")->required();
  coeffs->add_option("--samples", ca.samples, "quadrature resolution M (default max(2(N+1),512))");
  coeffs->add_option("--out", ca.out, "output JSON path");
  coeffs->add_option("--csv", ca.csv, "also write index,value CSV");
  coeffs->add_flag("--check-aliasing", ca.check_aliasing, "warn if M looks too small");
  coeffs->add_option("--center", ca.center, "filter center c");
  coeffs->add_option("--half-width", ca.half_width, "filter half-width R");
  coeffs->add_option("--steepness", ca.steepness, "filter steepness r");

  EvalArgs ea;
  auto* eval = app.add_subcommand("eval", "evaluate a truncated expansion on a matrix");
  eval->add_option("--coeffs", ea.coeffs_path, "coefficients JSON")->required();
  auto* mat_opt = eval->add_option("--matrix", ea.matrix_path, "matrix file (.txt or .bin)");
  auto* jor_opt = eval->add_option("--jordan", ea.jordan_path, "Jordan spec JSON");
  mat_opt->excludes(jor_opt);
  eval->add_option("--mode", ea.mode, "clenshaw|direct")
      ->check(CLI::IsMember({"clenshaw", "direct"}));
  eval->add_option("--out", ea.out, "output matrix path");

  ExperimentArgs xa;
  auto* experiment = app.add_subcommand("experiment", "reproduce a convergence experiment");
  experiment->add_option("name", xa.name, "fig1|fig2|fig3a|fig3b|fig4")->required();
  experiment->add_option("--seed", xa.seed, "seed (default: the figure's frozen seed)");
  experiment->add_option("--out-dir", xa.out_dir, "report directory");
  experiment->add_option("--max-n", xa.max_n, "override the N sweep limit");

  RecoverArgs ra;
  auto* recover = app.add_subcommand("recover", "recover an eigenspace with the erf filter");
  recover->add_option("operator", ra.operator_spec, "dense:<file> | diag:<file> | dct:<file>")
      ->required();
  recover->add_option("--center", ra.center, "filter center c")->required();
  recover->add_option("--half-width", ra.half_width, "filter half-width R")->required();
  recover->add_option("--steepness", ra.steepness, "filter steepness r")->required();
  recover->add_option("--degree", ra.degree, "expansion degree per pass");
  recover->add_option("--block", ra.block, "block size b");
  recover->add_option("--max-passes", ra.max_passes, "pass limit");
  recover->add_option("--tol", ra.tol, "residual tolerance");
  recover->add_option("--seed", ra.seed, "seed for the random initial block");
  recover->add_option("--scale", ra.scale, "lo,hi spectrum bounds to map onto [-1,1]");
  recover->add_option("--out", ra.out, "report JSON path");
  recover->add_option("--basis-out", ra.basis_out, "binary basis dump path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (coeffs->parsed()) return run_coeffs(ca);
    if (eval->parsed()) return run_eval(ea);
    if (experiment->parsed()) return run_experiment(xa);
    if (recover->parsed()) return run_recover(ra);
  } catch (const std::invalid_argument& e) {
    std::cerr << "chebmat: " << e.what() << "\n";
    return kExitUsage;
  } catch (const chebmat::CapabilityError& e) {
    std::cerr << "chebmat: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "chebmat: " << e.what() << "\n";
    return 1;
  }
  return kExitUsage;
}
