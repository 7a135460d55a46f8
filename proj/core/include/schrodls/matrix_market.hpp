#pragma once

#include <Eigen/Dense>

#include <iosfwd>
#include <string>

namespace schrodls {

/// Reads a Matrix Market file (coordinate or array; real, complex, integer or
/// pattern; general, symmetric, skew-symmetric or hermitian) into a dense
/// matrix. Throws ParseError with the offending line number on malformed input.
Eigen::MatrixXcd read_matrix_market(const std::string& path);
Eigen::MatrixXcd read_matrix_market(std::istream& in);

/// Writes a dense matrix in array format with full precision (%.17g);
/// real field when the matrix has no imaginary part.
void write_matrix_market(const std::string& path, const Eigen::MatrixXcd& m);
void write_matrix_market(const std::string& path, const Eigen::MatrixXd& m);

/// Whitespace-separated real numbers.
Eigen::VectorXcd read_vector_text(const std::string& path);
void write_vector_text(const std::string& path, const Eigen::VectorXd& v);

}  // namespace schrodls
