#include "chebmat/dense_matrix.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

static_assert(std::endian::native == std::endian::little,
              "binary matrix I/O assumes a little-endian host");

namespace chebmat {

namespace {
constexpr char kMagic[8] = {'C', 'H', 'E', 'B', 'M', 'A', 'T', '1'};
}

double spectral_norm(const DenseMatrix& a) {
  if (a.size() == 0) return 0.0;
  if (a.rows() <= 32 && a.cols() <= 32)
    return Eigen::JacobiSVD<DenseMatrix>(a).singularValues()(0);
  return Eigen::BDCSVD<DenseMatrix>(a).singularValues()(0);
}

double matrix_error(const DenseMatrix& a, const DenseMatrix& b, ErrorNorm norm) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("matrix_error: shape mismatch");
  if (norm == ErrorNorm::frobenius) return (a - b).norm();
  return spectral_norm(a - b);
}

DenseMatrix read_matrix_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::uint64_t k = 0;
  if (!(in >> k) || k == 0) throw std::runtime_error(path + ": bad matrix order");
  DenseMatrix a(k, k);
  for (std::uint64_t i = 0; i < k; ++i)
    for (std::uint64_t j = 0; j < k; ++j)
      if (!(in >> a(i, j))) throw std::runtime_error(path + ": truncated matrix data");
  return a;
}

void write_matrix_text(const DenseMatrix& a, const std::string& path) {
  if (a.rows() != a.cols()) throw std::invalid_argument("write_matrix_text: non-square");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << a.rows() << "\n";
  char buf[64];
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", a(i, j));
      out << buf << (j + 1 < a.cols() ? " " : "\n");
    }
  }
}

DenseMatrix read_matrix_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  char magic[8];
  in.read(magic, 8);
  if (!in || std::memcmp(magic, kMagic, 8) != 0)
    throw std::runtime_error(path + ": not a CHEBMAT1 file");
  std::uint64_t k = 0;
  in.read(reinterpret_cast<char*>(&k), sizeof(k));
  if (!in || k == 0) throw std::runtime_error(path + ": bad matrix order");
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> a(k, k);
  in.read(reinterpret_cast<char*>(a.data()), static_cast<std::streamsize>(k * k * sizeof(double)));
  if (!in) throw std::runtime_error(path + ": truncated matrix data");
  return a;
}

void write_matrix_binary(const DenseMatrix& a, const std::string& path) {
  if (a.rows() != a.cols()) throw std::invalid_argument("write_matrix_binary: non-square");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out.write(kMagic, 8);
  const std::uint64_t k = static_cast<std::uint64_t>(a.rows());
  out.write(reinterpret_cast<const char*>(&k), sizeof(k));
  const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rm = a;
  out.write(reinterpret_cast<const char*>(rm.data()),
            static_cast<std::streamsize>(k * k * sizeof(double)));
}

namespace {
bool has_suffix(const std::string& s, const std::string& suf) {
  return s.size() >= suf.size() && s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
}
}  // namespace

DenseMatrix read_matrix(const std::string& path) {
  return has_suffix(path, ".bin") ? read_matrix_binary(path) : read_matrix_text(path);
}

void write_matrix(const DenseMatrix& a, const std::string& path) {
  if (has_suffix(path, ".bin"))
    write_matrix_binary(a, path);
  else
    write_matrix_text(a, path);
}

}  // namespace chebmat
