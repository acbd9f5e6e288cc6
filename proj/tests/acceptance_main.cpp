// Acceptance gate: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Tolerances and seeds are pinned here, not configurable.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "chebmat/builtins.hpp"
#include "chebmat/cheb_scalar.hpp"
#include "chebmat/dense_matrix.hpp"
#include "chebmat/experiments.hpp"
#include "chebmat/jordan.hpp"
#include "chebmat/mat_eval.hpp"
#include "chebmat/rng.hpp"
#include "chebmat/spectral_filter.hpp"

using namespace chebmat;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

Outcome fig_outcome(const std::string& name, std::uint64_t seed) {
  const FigureResult fig = run_figure(name, seed);
  return {fig.pass, fig.detail};
}

Outcome criterion_f3_precision() {
  const ConvergenceReport r = run_symmetric_experiment(make_f3(), 10, kF3MatrixSeed, 100);
  const DenseMatrix a = goe_symmetric(kF3MatrixSeed, 10);
  const Eigen::SelfAdjointEigenSolver<DenseMatrix> es(a, Eigen::EigenvaluesOnly);
  int big = 0;
  for (int i = 0; i < 10; ++i) big += std::abs(es.eigenvalues()[i]) > 0.5 ? 1 : 0;
  const double rel = r.errors[73] / r.error_scale;
  int nonzero = 0;
  for (int n = 0; n <= 73; ++n) nonzero += r.coeff_abs[n] > 1e-15 ? 1 : 0;
  const bool pass = big == 7 && rel < 1e-12 && nonzero == 37;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "big_eigs=%d rel_err_73=%.3e nonzero_coeffs=%d", big, rel,
                nonzero);
  return {pass, buf};
}

Outcome criterion_oracle_triangle() {
  Rng seeder(20260809);
  const ScalarFunction f3 = make_f3();
  const ChebCoeffs c3 = cheb_coeffs(f3, 200);
  double worst_cd = 0.0, worst_poly = 0.0, worst_f3 = 0.0;
  for (int rep = 0; rep < 20; ++rep) {
    Rng rng(derive_seed(20260809, rep));
    // random Jordan spec: order <= 9, blocks <= 4, eigenvalues in [-0.9, 0.9]
    JordanSpec spec;
    int remaining = 4 + static_cast<int>(rng.uniform01() * 5);
    while (remaining > 0) {
      const int size = 1 + static_cast<int>(rng.uniform01() * std::min(4, remaining));
      spec.blocks.push_back({-0.9 + 1.8 * rng.uniform01(), std::min(size, remaining), 1.0});
      remaining -= spec.blocks.back().size;
    }
    spec.similarity = OrthogonalSimilarity{rng.next_u64()};
    const DenseMatrix a = build_jordan_matrix(spec);

    // polynomial case, exact at N = degree
    const int deg = 2 + static_cast<int>(rng.uniform01() * 10);
    std::vector<double> mono(deg + 1);
    for (auto& v : mono) v = 2.0 * rng.uniform01() - 1.0;
    const ScalarFunction p = make_polynomial(mono);
    const ChebCoeffs cp = cheb_coeffs(p, deg, 4 * (deg + 1));
    const DenseMatrix clen_p = clenshaw_matrix(cp, a);
    worst_cd = std::max(worst_cd, (clen_p - direct_sum_matrix(cp, a)).cwiseAbs().maxCoeff());
    worst_poly = std::max(
        worst_poly, (clen_p - f_of_matrix_via_jordan(p, spec)).cwiseAbs().maxCoeff());

    // f3 at N = 200 against the Jordan oracle
    const DenseMatrix clen_f3 = clenshaw_matrix(c3, a);
    worst_cd = std::max(worst_cd, (clen_f3 - direct_sum_matrix(c3, a)).cwiseAbs().maxCoeff());
    worst_f3 = std::max(
        worst_f3, (clen_f3 - f_of_matrix_via_jordan(f3, spec)).cwiseAbs().maxCoeff());
  }
  const bool pass = worst_cd < 1e-11 && worst_poly < 1e-11 && worst_f3 < 1e-8;
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "clenshaw_vs_direct=%.3e poly_vs_jordan=%.3e f3_vs_jordan=%.3e", worst_cd,
                worst_poly, worst_f3);
  return {pass, buf};
}

Outcome criterion_bounds() {
  bool pass = true;
  for (double delta : {0.1, 0.3, 0.5}) {
    BoundCheckConfig cfg;
    cfg.delta = delta;
    cfg.max_degree = 40;
    cfg.max_order = 4;
    cfg.grid_points = 200;
    pass = pass && check_derivative_bounds(cfg);
  }
  return {pass, "delta in {0.1, 0.3, 0.5}, n <= 40, k <= 4, 200-point grid"};
}

Eigen::VectorXd recovery_spectrum(Eigen::Index k, Rng& rng) {
  Eigen::VectorXd d = Eigen::VectorXd::Zero(k);
  // 20 ones and 20 halves at shuffled positions
  std::vector<Eigen::Index> idx(k);
  for (Eigen::Index i = 0; i < k; ++i) idx[i] = i;
  for (Eigen::Index i = k - 1; i > 0; --i)
    std::swap(idx[i], idx[static_cast<Eigen::Index>(rng.uniform01() * (i + 1))]);
  for (int i = 0; i < 20; ++i) d[idx[i]] = 1.0;
  for (int i = 20; i < 40; ++i) d[idx[i]] = 0.5;
  return d;
}

Outcome criterion_recover_dense() {
  Rng rng(501);
  const Eigen::Index k = 2000;
  const Eigen::VectorXd d = recovery_spectrum(k, rng);
  const DenseMatrix q = random_orthogonal(rng, k);
  DenseMatrix a(k, k);
  a.noalias() = q.transpose() * d.asDiagonal() * q;
  a = 0.5 * (a + a.transpose()).eval();
  const DenseOperator op(a);

  RecoveryConfig cfg;
  cfg.degree = 10;
  cfg.block_size = 25;
  cfg.residual_tol = 1e-10;
  cfg.max_passes = 12;
  cfg.seed = 77;
  const RecoveryResult r = recover_eigenspace(op, FilterParams{0.5, 0.2, 0.1}, cfg);
  const bool pass = r.converged && r.dimension() == 20 &&
                    r.residual_history.back() < 1e-10 && r.passes <= 10;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "dim=%ld residual=%.3e passes=%d lambda=%.12f",
                static_cast<long>(r.dimension()), r.residual_history.back(), r.passes,
                r.lambda_hat);
  return {pass, buf};
}

Outcome criterion_recover_dct() {
  Rng rng(502);
  const Eigen::Index k = 50000;
  const DctOperator op(recovery_spectrum(k, rng));

  RecoveryConfig cfg;
  cfg.degree = 10;
  cfg.block_size = 25;
  cfg.residual_tol = 1e-10;
  cfg.max_passes = 12;
  cfg.seed = 78;
  const RecoveryResult r = recover_eigenspace(op, FilterParams{0.5, 0.2, 0.1}, cfg);
  const bool pass = r.converged && r.dimension() == 20 && r.residual_history.back() < 1e-9;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "dim=%ld residual=%.3e passes=%d op_applications=%ld",
                static_cast<long>(r.dimension()), r.residual_history.back(), r.passes,
                r.op_applications);
  return {pass, buf};
}

Outcome criterion_property_suites() {
  std::string failures;

  // similarity preservation and commutativity, 20 seeded cases each; the
  // random matrices carry real spectra (triangular core under a rotation)
  {
    Rng rng(601);
    const ChebCoeffs c = cheb_coeffs(make_f3(), 60);
    for (int rep = 0; rep < 20; ++rep) {
      DenseMatrix t = DenseMatrix::Zero(8, 8);
      for (int i = 0; i < 8; ++i) {
        t(i, i) = 0.9 * (2.0 * rng.uniform01() - 1.0);
        for (int j = i + 1; j < 8; ++j) t(i, j) = 0.3 * rng.gaussian();
      }
      const DenseMatrix rot = random_orthogonal(rng, 8);
      const DenseMatrix a = rot * t * rot.transpose();
      const DenseMatrix q1 = random_orthogonal(rng, 8), q2 = random_orthogonal(rng, 8);
      Eigen::VectorXd sv(8);
      for (int i = 0; i < 8; ++i) sv[i] = 0.5 + 4.5 * rng.uniform01();
      const DenseMatrix p = q1 * sv.asDiagonal() * q2.transpose();
      const DenseMatrix p_inv = q2 * sv.cwiseInverse().asDiagonal() * q1.transpose();
      const DenseMatrix lhs = clenshaw_matrix(c, p_inv * a * p);
      const DenseMatrix rhs = p_inv * clenshaw_matrix(c, a) * p;
      if ((lhs - rhs).cwiseAbs().maxCoeff() >
          1e-9 * std::max(1.0, rhs.cwiseAbs().maxCoeff()))
        failures += " similarity";
      const DenseMatrix s = clenshaw_matrix(c, a);
      if ((s * a - a * s).cwiseAbs().maxCoeff() > 1e-11) failures += " commutativity";
    }
  }

  // diagonal reduction, 20 seeded cases
  {
    Rng rng(602);
    const ChebCoeffs c = cheb_coeffs(make_f2(), 50);
    for (int rep = 0; rep < 20; ++rep) {
      Eigen::VectorXd d(7);
      for (int i = 0; i < 7; ++i) d[i] = 2.0 * rng.uniform01() - 1.0;
      const DenseMatrix s = clenshaw_matrix(c, d.asDiagonal().toDenseMatrix());
      for (int i = 0; i < 7; ++i)
        if (std::abs(s(i, i) - eval_cheb_scalar(c, d[i])) > 1e-13) failures += " diagonal";
    }
  }

  // orthonormality of recovered bases, 20 seeded recoveries
  {
    for (int rep = 0; rep < 20; ++rep) {
      Rng rng(derive_seed(603, rep));
      Eigen::VectorXd d = Eigen::VectorXd::Zero(120);
      for (int i = 0; i < 5; ++i)
        d[static_cast<int>(rng.uniform01() * 120)] = 0.5;
      RecoveryConfig cfg;
      cfg.block_size = 8;
      cfg.seed = derive_seed(604, rep);
      const RecoveryResult r =
          recover_eigenspace(DiagonalOperator(d), FilterParams{0.5, 0.2, 0.1}, cfg);
      const Eigen::MatrixXd gram = r.basis.transpose() * r.basis;
      if ((gram - Eigen::MatrixXd::Identity(r.dimension(), r.dimension()))
              .cwiseAbs()
              .maxCoeff() >= 1e-12)
        failures += " orthonormality";
    }
  }

  // parity of the built-ins, 20 seeded degree/sample-count configurations
  {
    Rng rng(605);
    for (int rep = 0; rep < 20; ++rep) {
      const int n_max = 20 + static_cast<int>(rng.uniform01() * 200);
      const int m = std::max(2 * (n_max + 1), 256 + static_cast<int>(rng.uniform01() * 512));
      const ChebCoeffs c1 = cheb_coeffs(make_f1(), n_max, m);
      for (int n = 0; n <= n_max; n += 2)
        if (std::abs(c1.coeffs[n]) > 1e-13) failures += " parity-f1";
      const ChebCoeffs c4 = cheb_coeffs(make_f4(), n_max, m);
      for (int n = 1; n <= n_max; n += 2)
        if (std::abs(c4.coeffs[n]) > 1e-13) failures += " parity-f4";
    }
  }

  // the binomial identity for polynomials on Jordan blocks, 20 seeded cases
  {
    Rng rng(606);
    for (int rep = 0; rep < 20; ++rep) {
      std::vector<double> mono(2 + static_cast<std::size_t>(rng.uniform01() * 11));
      for (auto& v : mono) v = 2.0 * rng.uniform01() - 1.0;
      const double lambda = -0.9 + 1.8 * rng.uniform01();
      const int size = 1 + static_cast<int>(rng.uniform01() * 4);
      if (!poly_on_jordan_block_check(mono, lambda, size)) failures += " binomial";
    }
  }

  if (failures.empty()) return {true, "similarity, commutativity, diagonal, orthonormality, parity, binomial"};
  return {false, "violations:" + failures};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "f1 rate, slope in [-2.4,-1.6] over N in [100,2000]", 60,
       [] { return fig_outcome("fig1", kFig1DefaultSeed); }},
      {2, "f2 rate, slope in [-1.35,-0.7]", 60,
       [] { return fig_outcome("fig2", kFig2DefaultSeed); }},
      {3, "f3 precision at N=73 (rel err < 1e-12, 37 coefficients)", 5,
       criterion_f3_precision},
      {4, "Jordan threshold for f4 at 0.7 (m=2,3 converge, m=4 does not)", 120,
       [] { return fig_outcome("fig3a", kFig3DefaultSeed); }},
      {5, "endpoint eigenvalue 1.0 fails, 0.4 and 0.7 converge", 120,
       [] { return fig_outcome("fig3b", kFig3DefaultSeed); }},
      {6, "largest-block dominance and duplication identity", 120,
       [] { return fig_outcome("fig4", kFig4DefaultSeed); }},
      {7, "oracle equivalence triangle (clenshaw / direct / jordan)", 30,
       criterion_oracle_triangle},
      {8, "derivative bound suite", 10, criterion_bounds},
      {9, "eigenspace recovery, dense order 2000", 60, criterion_recover_dense},
      {10, "eigenspace recovery, matrix-free DCT order 50000", 120, criterion_recover_dct},
      {11, "property suites (>= 20 seeded cases each)", 60, criterion_property_suites},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_budget = elapsed < c.budget_s;
    const bool pass = outcome.pass && in_budget;
    failures += pass ? 0 : 1;
    std::printf("[%s] criterion %2d (%6.2fs/%3.0fs): %s -- %s\n", pass ? "PASS" : "FAIL",
                c.id, elapsed, c.budget_s, c.name, outcome.detail.c_str());
    std::fflush(stdout);
  }
  if (failures) std::printf("%d criterion(s) FAILED\n", failures);
  else std::printf("all %zu criteria passed\n", criteria.size());
  return failures;
}
