#include "qpt/matrix.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>

#include "json_util.hpp"

namespace qpt {

bool is_hermitian(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_unitary(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  Matrix id = Matrix::Identity(m.rows(), m.cols());
  return (m.adjoint() * m - id).cwiseAbs().maxCoeff() <= tol;
}

bool is_positive_semidefinite(const Matrix& m, double tol) {
  if (!is_hermitian(m, tol)) return false;
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()),
                                           Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -tol;
}

double frobenius_distance(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw SizeError("frobenius_distance: shape mismatch");
  }
  return (a - b).norm();
}

Matrix tensor_product(const Matrix& a, const Matrix& b) {
  const Eigen::Index ar = a.rows(), ac = a.cols();
  const Eigen::Index br = b.rows(), bc = b.cols();
  if (ar > 0 && br > (Eigen::Index{1} << 40) / ar) {
    throw SizeError("tensor_product: dimension overflow");
  }
  Matrix out(ar * br, ac * bc);
  for (Eigen::Index i = 0; i < ar; ++i) {
    for (Eigen::Index j = 0; j < ac; ++j) {
      out.block(i * br, j * bc, br, bc) = a(i, j) * b;
    }
  }
  return out;
}

Matrix partial_trace(const Matrix& m, Keep keep, Eigen::Index dim_a,
                     Eigen::Index dim_b) {
  if (m.rows() != m.cols() || m.rows() != dim_a * dim_b) {
    throw SizeError("partial_trace: matrix is not dim_a*dim_b square");
  }
  if (keep == Keep::A) {
    Matrix out = Matrix::Zero(dim_a, dim_a);
    for (Eigen::Index i = 0; i < dim_a; ++i)
      for (Eigen::Index j = 0; j < dim_a; ++j)
        for (Eigen::Index b = 0; b < dim_b; ++b)
          out(i, j) += m(i * dim_b + b, j * dim_b + b);
    return out;
  }
  Matrix out = Matrix::Zero(dim_b, dim_b);
  for (Eigen::Index i = 0; i < dim_b; ++i)
    for (Eigen::Index j = 0; j < dim_b; ++j)
      for (Eigen::Index a = 0; a < dim_a; ++a)
        out(i, j) += m(a * dim_b + i, a * dim_b + j);
  return out;
}

Matrix permute_systems(const Matrix& m, const std::vector<Eigen::Index>& dims,
                       const std::vector<std::size_t>& perm) {
  const std::size_t k = dims.size();
  if (perm.size() != k) throw SizeError("permute_systems: perm/dims mismatch");
  std::vector<bool> seen(k, false);
  for (std::size_t p : perm) {
    if (p >= k || seen[p]) throw ArgumentError("permute_systems: bad permutation");
    seen[p] = true;
  }
  Eigen::Index total = 1;
  for (Eigen::Index d : dims) total *= d;
  if (m.rows() != total || m.cols() != total) {
    throw SizeError("permute_systems: matrix does not match dims");
  }

  // Strides with factor 0 most significant, for both layouts.
  std::vector<Eigen::Index> old_stride(k, 1), new_stride(k, 1);
  for (std::size_t q = k; q-- > 1;) old_stride[q - 1] = old_stride[q] * dims[q];
  std::vector<Eigen::Index> new_dims(k);
  for (std::size_t q = 0; q < k; ++q) new_dims[q] = dims[perm[q]];
  for (std::size_t q = k; q-- > 1;)
    new_stride[q - 1] = new_stride[q] * new_dims[q];

  std::vector<Eigen::Index> map(static_cast<std::size_t>(total));
  for (Eigen::Index r = 0; r < total; ++r) {
    Eigen::Index rem = r, old_index = 0;
    for (std::size_t q = 0; q < k; ++q) {
      const Eigen::Index digit = rem / new_stride[q];
      rem -= digit * new_stride[q];
      old_index += digit * old_stride[perm[q]];
    }
    map[static_cast<std::size_t>(r)] = old_index;
  }

  Matrix out(total, total);
  for (Eigen::Index r = 0; r < total; ++r)
    for (Eigen::Index c = 0; c < total; ++c)
      out(r, c) = m(map[static_cast<std::size_t>(r)],
                    map[static_cast<std::size_t>(c)]);
  return out;
}

DensityOperator make_density_operator(Matrix m, double tol) {
  if (m.rows() != m.cols()) {
    throw ValidationError("density operator: matrix not square");
  }
  if (!is_hermitian(m, tol)) {
    throw ValidationError("density operator: not Hermitian within tol");
  }
  const double tr = m.trace().real();
  if (std::abs(tr - 1.0) > tol || std::abs(m.trace().imag()) > tol) {
    throw ValidationError("density operator: trace != 1 within tol");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()),
                                           Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol) {
    throw ValidationError("density operator: negative eigenvalue " +
                          std::to_string(es.eigenvalues().minCoeff()));
  }
  return DensityOperator{std::move(m)};
}

std::string matrix_to_json(const Matrix& m) {
  return detail::matrix_to_json_obj(m).dump();
}

Matrix matrix_from_json(const std::string& text) {
  detail::json j;
  try {
    j = detail::json::parse(text);
  } catch (const detail::json::parse_error& e) {
    throw ValidationError(std::string("matrix JSON parse error: ") + e.what());
  }
  return detail::matrix_from_json_obj(j);
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace detail {

json matrix_to_json_obj(const Matrix& m) {
  json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  std::vector<double> re, im;
  re.reserve(static_cast<std::size_t>(m.size()));
  im.reserve(static_cast<std::size_t>(m.size()));
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      re.push_back(m(r, c).real());
      im.push_back(m(r, c).imag());
    }
  }
  j["re"] = re;
  j["im"] = im;
  return j;
}

Matrix matrix_from_json_obj(const json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") ||
      !j.contains("re") || !j.contains("im")) {
    throw ValidationError("matrix JSON: expected {rows, cols, re, im}");
  }
  const Eigen::Index rows = j.at("rows").get<Eigen::Index>();
  const Eigen::Index cols = j.at("cols").get<Eigen::Index>();
  if (rows < 0 || cols < 0 || rows * cols > (Eigen::Index{1} << 26)) {
    throw SizeError("matrix JSON: unreasonable dimensions");
  }
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  if (static_cast<Eigen::Index>(re.size()) != rows * cols ||
      static_cast<Eigen::Index>(im.size()) != rows * cols) {
    throw ValidationError("matrix JSON: entries.len != rows*cols");
  }
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      const std::size_t k = static_cast<std::size_t>(r * cols + c);
      m(r, c) = Complex(re.at(k).get<double>(), im.at(k).get<double>());
    }
  }
  return m;
}

}  // namespace detail

}  // namespace qpt
