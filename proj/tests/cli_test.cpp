// End-to-end tests of the chebmat binary: exit-code contract, file formats,
// manifests, reproducibility. The binary path arrives in CHEBMAT_CLI.
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "chebmat/dense_matrix.hpp"
#include "chebmat/jordan.hpp"

namespace fs = std::filesystem;

namespace {

std::string cli_path() {
  const char* p = std::getenv("CHEBMAT_CLI");
  REQUIRE_MESSAGE(p != nullptr, "CHEBMAT_CLI must point at the chebmat binary");
  return p;
}

int run_cli(const std::string& args) {
  const std::string cmd = cli_path() + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WEXITSTATUS(status);
}

nlohmann::json read_json(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  nlohmann::json j;
  in >> j;
  return j;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("chebmat_cli_" + tag);
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("coeffs: outputs, parity, and exit codes") {
  TempDir dir("coeffs");
  const std::string out = dir / "f3.json";
  CHECK(run_cli("coeffs f3 --degree 73 --out " + out) == 0);
  const auto j = read_json(out);
  CHECK(j["degree"] == 73);
  CHECK(j["function"] == "f3");
  int nonzero = 0;
  for (const auto& v : j["coeffs"]) nonzero += std::abs(v.get<double>()) > 1e-15 ? 1 : 0;
  CHECK(nonzero == 37);
  // manifest written alongside
  const auto m = read_json(out + ".manifest.json");
  CHECK(m["command"] == "coeffs");
  CHECK(m["outputs"].size() == 1);

  const std::string f1 = dir / "f1.json";
  CHECK(run_cli("coeffs f1 --degree 4 --out " + f1) == 0);
  const auto j1 = read_json(f1);
  CHECK(std::abs(j1["coeffs"][0].get<double>()) < 1e-15);
  CHECK(std::abs(j1["coeffs"][2].get<double>()) < 1e-15);
  CHECK(std::abs(j1["coeffs"][4].get<double>()) < 1e-15);

  CHECK(run_cli("coeffs nosuch --degree 3 --out " + (dir / "x.json")) == 2);
  CHECK(run_cli("coeffs f1 --out " + (dir / "x.json")) == 2);  // missing --degree

  // CSV sidecar: index,value rows
  const std::string csv = dir / "f3.csv";
  CHECK(run_cli("coeffs f3 --degree 5 --out " + (dir / "c5.json") + " --csv " + csv) == 0);
  const std::string text = read_file(csv);
  CHECK(text.rfind("index,value\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 7);
}

TEST_CASE("eval: clenshaw vs direct, oracle error, bounds check") {
  TempDir dir("eval");
  const std::string coeffs = dir / "c.json";
  REQUIRE(run_cli("coeffs f3 --degree 73 --out " + coeffs) == 0);

  chebmat::JordanSpec spec{{{0.7, 2, 1.0}}, std::monostate{}};
  {
    std::ofstream out(dir / "jordan.json");
    out << chebmat::jordan_spec_to_json(spec);
  }
  const std::string res = dir / "res.txt";
  CHECK(run_cli("eval --coeffs " + coeffs + " --jordan " + (dir / "jordan.json") + " --out " +
                res) == 0);
  const auto report = read_json(res + ".report.json");
  CHECK(report["oracle_error_spectral"].get<double>() < 1e-10);

  // identity matrix: result is (sum' alpha) I
  {
    std::ofstream out(dir / "eye.txt");
    out << "3\n1 0 0\n0 1 0\n0 0 1\n";
  }
  const std::string eye_out = dir / "eye_out.txt";
  CHECK(run_cli("eval --coeffs " + coeffs + " --matrix " + (dir / "eye.txt") + " --out " +
                eye_out) == 0);
  const chebmat::DenseMatrix r = chebmat::read_matrix(eye_out);
  CHECK(std::abs(r(0, 1)) < 1e-14);
  CHECK(r(0, 0) == doctest::Approx(r(2, 2)).epsilon(1e-14));

  // the two modes agree
  const std::string direct_out = dir / "direct.txt";
  CHECK(run_cli("eval --coeffs " + coeffs + " --jordan " + (dir / "jordan.json") +
                " --mode direct --out " + direct_out) == 0);
  CHECK((chebmat::read_matrix(res) - chebmat::read_matrix(direct_out)).cwiseAbs().maxCoeff() <
        1e-11);

  // spectral bounds violated
  chebmat::JordanSpec wild{{{1.4, 2, 1.0}}, std::monostate{}};
  {
    std::ofstream out(dir / "wild.json");
    out << chebmat::jordan_spec_to_json(wild);
  }
  CHECK(run_cli("eval --coeffs " + coeffs + " --jordan " + (dir / "wild.json") + " --out " +
                (dir / "w.txt")) == 3);
}

TEST_CASE("experiment: unknown name, outputs, reproducibility") {
  TempDir a("expa"), b("expb");
  CHECK(run_cli("experiment nosuch --out-dir " + (a / "")) == 2);

  CHECK(run_cli("experiment fig4 --max-n 100 --out-dir " + (a / "")) == 0);
  CHECK(fs::exists(a.path / "fig4.manifest.json"));
  const auto manifest = read_json(a.path / "fig4.manifest.json");
  CHECK(manifest["outputs"].size() == 12);  // six reports, csv + json each

  CHECK(run_cli("experiment fig4 --max-n 100 --out-dir " + (b / "")) == 0);
  // identical command + seed: byte-identical payloads
  for (const auto& entry : fs::directory_iterator(a.path)) {
    const auto name = entry.path().filename().string();
    if (name.find("manifest") != std::string::npos) continue;  // carries wall time
    CHECK(read_file(entry.path()) == read_file(b.path / name));
  }
}

TEST_CASE("recover: diagonal operators, empty window, non-convergence") {
  TempDir dir("recover");
  {
    std::ofstream out(dir / "diag.txt");
    for (int i = 0; i < 50; ++i) out << (i == 17 ? 0.5 : 0.0) << "\n";
  }
  const std::string report = dir / "rec.json";
  CHECK(run_cli("recover diag:" + (dir / "diag.txt") +
                " --center 0.5 --half-width 0.2 --steepness 0.1 --block 3 --seed 5 --out " +
                report) == 0);
  const auto j = read_json(report);
  CHECK(j["dimension"] == 1);
  CHECK(j["converged"] == true);
  CHECK(j["lambda_hat"].get<double>() == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(read_json(report + ".manifest.json")["command"] == "recover");

  // no eigenvalue near the center: converged-empty
  CHECK(run_cli("recover diag:" + (dir / "diag.txt") +
                " --center -0.6 --half-width 0.1 --steepness 0.05 --block 3 --out " +
                (dir / "empty.json")) == 0);
  const auto je = read_json(dir / "empty.json");
  CHECK(je["dimension"] == 0);
  CHECK(je["lambda_hat"].is_null());

  // two eigenvalues straddling the window edge: stalls, exit 5
  {
    std::ofstream out(dir / "mix.txt");
    for (int i = 0; i < 50; ++i) out << (i == 5 ? 0.5 : (i == 9 ? 0.7 : 0.0)) << "\n";
  }
  CHECK(run_cli("recover diag:" + (dir / "mix.txt") +
                " --center 0.5 --half-width 0.2 --steepness 0.1 --block 2 --max-passes 5 --out " +
                (dir / "mix.json")) == 5);
  CHECK(read_json(dir / "mix.json")["converged"] == false);

  // --scale maps a [0,10] spectrum onto [-1,1]
  {
    std::ofstream out(dir / "wide.txt");
    for (int i = 0; i < 50; ++i) out << (i < 4 ? 5.0 : 9.0) << "\n";
  }
  CHECK(run_cli("recover diag:" + (dir / "wide.txt") +
                " --center 5 --half-width 1 --steepness 0.5 --block 6 --scale 0,10 --out " +
                (dir / "wide.json")) == 0);
  const auto jw = read_json(dir / "wide.json");
  CHECK(jw["dimension"] == 4);
  CHECK(jw["lambda_hat"].get<double>() == doctest::Approx(5.0).epsilon(1e-8));
}

TEST_CASE("recover: dct operator spec with basis dump") {
  TempDir dir("dct");
  {
    std::ofstream out(dir / "spec.txt");
    for (int i = 0; i < 256; ++i) out << (i % 40 == 3 ? 0.5 : 0.0) << "\n";
  }
  const std::string basis = dir / "basis.bin";
  CHECK(run_cli("recover dct:" + (dir / "spec.txt") +
                " --center 0.5 --half-width 0.2 --steepness 0.1 --block 9 --seed 2 --out " +
                (dir / "r.json") + " --basis-out " + basis) == 0);
  const auto j = read_json(dir / "r.json");
  CHECK(j["dimension"] == 7);  // indices 3, 43, ..., 243
  const chebmat::DenseMatrix b = chebmat::read_matrix_binary(basis);
  CHECK(b.rows() == 256);
  // dumped columns are orthonormal
  const auto u = b.leftCols(7);
  CHECK((u.transpose() * u - chebmat::DenseMatrix::Identity(7, 7)).cwiseAbs().maxCoeff() <
        1e-12);
}
