#pragma once

#include <string>

#include <Eigen/Dense>

namespace chebmat {

using DenseMatrix = Eigen::MatrixXd;

/// Largest singular value.
double spectral_norm(const DenseMatrix& a);

enum class ErrorNorm { spectral, frobenius };

/// ||a - b|| in the requested norm (diagnostic error measure; spectral is
/// the default everywhere, Frobenius is the cheap alternative).
double matrix_error(const DenseMatrix& a, const DenseMatrix& b,
                    ErrorNorm norm = ErrorNorm::spectral);

// Text format: the order k followed by k*k entries, whitespace-separated,
// row-major. Binary format: magic "CHEBMAT1", u64 order, then row-major
// IEEE-754 doubles, all little-endian.

DenseMatrix read_matrix_text(const std::string& path);
void write_matrix_text(const DenseMatrix& a, const std::string& path);

DenseMatrix read_matrix_binary(const std::string& path);
void write_matrix_binary(const DenseMatrix& a, const std::string& path);

/// Dispatch on extension: ".bin" -> binary, anything else -> text.
DenseMatrix read_matrix(const std::string& path);
void write_matrix(const DenseMatrix& a, const std::string& path);

}  // namespace chebmat
