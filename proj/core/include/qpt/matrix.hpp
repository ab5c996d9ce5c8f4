#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qpt/common.hpp"

namespace qpt {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

bool is_hermitian(const Matrix& m, double tol = kDefaultTol);
bool is_unitary(const Matrix& m, double tol = kDefaultTol);
bool is_positive_semidefinite(const Matrix& m, double tol = kDefaultTol);

double frobenius_distance(const Matrix& a, const Matrix& b);

// Kronecker product with a's indices most significant.
Matrix tensor_product(const Matrix& a, const Matrix& b);

enum class Keep { A, B };

// Partial trace of a square matrix on H_A (x) H_B; the result's trace equals
// the input's trace.
Matrix partial_trace(const Matrix& m, Keep keep, Eigen::Index dim_a,
                     Eigen::Index dim_b);

// Reorders tensor factors of a square matrix: new factor q is old factor
// perm[q]; dims lists the old factor dimensions in order.
Matrix permute_systems(const Matrix& m, const std::vector<Eigen::Index>& dims,
                       const std::vector<std::size_t>& perm);

struct DensityOperator {
  Matrix matrix;
  Eigen::Index dim() const { return matrix.rows(); }
};

// Validates Hermiticity, unit trace and the eigenvalue floor -tol.
DensityOperator make_density_operator(Matrix m, double tol = kDefaultTol);

// JSON object {rows, cols, re, im} with row-major entry arrays; the one
// matrix serialization used by every file format in the project.
std::string matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const std::string& text);

// %.17g keeps doubles byte-stable across reruns of the same build.
std::string format_double(double v);

}  // namespace qpt
