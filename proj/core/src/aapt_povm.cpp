#include "qpt/aapt_povm.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "qpt/pauli.hpp"

namespace qpt {

namespace {

std::vector<Matrix> unit_pauli_basis() {
  const double r = 1.0 / std::sqrt(2.0);
  return {r * pauli_i(), r * pauli_x(), r * pauli_y(), r * pauli_z()};
}

Matrix build_omega(const std::vector<double>& coeffs) {
  const auto basis = unit_pauli_basis();
  Matrix omega = Matrix::Zero(4, 4);
  for (std::size_t a = 0; a < 4; ++a) {
    omega += coeffs[a] * tensor_product(basis[a], basis[a]);
  }
  return omega;
}

double min_gap(const Matrix& omega) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(omega, Eigen::EigenvaluesOnly);
  double gap = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 1; i < es.eigenvalues().size(); ++i) {
    gap = std::min(gap, es.eigenvalues()(i) - es.eigenvalues()(i - 1));
  }
  return gap;
}

}  // namespace

UniversalObservable build_universal_observable(Eigen::Index d,
                                               std::vector<double> coeffs,
                                               const DensityOperator& r) {
  if (d != 2) {
    throw SizeError("build_universal_observable: only d = 2 is supported");
  }
  if (coeffs.size() != 4) {
    throw ArgumentError("build_universal_observable: need d^2 coefficients");
  }
  if (r.matrix.rows() != d) {
    throw SizeError("build_universal_observable: ancilla dimension mismatch");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> res(r.matrix, Eigen::EigenvaluesOnly);
  if (res.eigenvalues().minCoeff() < kDefaultTol) {
    throw ValidationError(
        "build_universal_observable: ancilla state is rank deficient, the M "
        "matrix cannot be inverted");
  }

  UniversalObservable u;
  u.d = d;
  u.ancilla = r;
  u.omega = build_omega(coeffs);
  u.min_eigen_gap = min_gap(u.omega);
  if (u.min_eigen_gap < 1e-8) {
    // Spread the coefficients slightly and try once more.
    for (std::size_t a = 0; a < coeffs.size(); ++a) {
      coeffs[a] += static_cast<double>(a + 1) * 1e-3;
    }
    u.omega = build_omega(coeffs);
    u.min_eigen_gap = min_gap(u.omega);
    if (u.min_eigen_gap < 1e-8) {
      throw ValidationError(
          "build_universal_observable: spectrum irreducibly degenerate");
    }
  }
  u.coeffs = std::move(coeffs);
  u.observable = Observable::from_matrix(u.omega);
  if (u.observable.outcome_count() != 4) {
    throw ValidationError("build_universal_observable: expected 4 outcomes");
  }

  const Matrix id = Matrix::Identity(d, d);
  u.m_map.resize(4, d * d);
  for (std::size_t a = 0; a < 4; ++a) {
    const Matrix effect = partial_trace(
        u.observable.projectors[a] * tensor_product(id, r.matrix), Keep::A, d, d);
    for (Eigen::Index m = 0; m < d; ++m)
      for (Eigen::Index n = 0; n < d; ++n)
        u.m_map(static_cast<Eigen::Index>(a), n * d + m) = effect(m, n);
    u.effects.push_back(effect);
  }
  Eigen::JacobiSVD<Matrix> svd(u.m_map);
  const double smin = svd.singularValues().minCoeff();
  u.condition_number = smin > 0 ? svd.singularValues().maxCoeff() / smin
                                : std::numeric_limits<double>::infinity();
  return u;
}

DensityOperator povm_default_ancilla() {
  Matrix r = 0.5 * (pauli_i() + 0.5 * pauli_x() + 0.3 * pauli_y() +
                    0.2 * pauli_z());
  return make_density_operator(r);
}

Matrix povm_state_tomography(const DensityOperator& rho,
                             const UniversalObservable& u,
                             const SamplingMode& mode) {
  mode.check();
  if (rho.matrix.rows() != u.d) {
    throw SizeError("povm_state_tomography: dimension mismatch");
  }
  if (!std::isfinite(u.condition_number) || u.condition_number > 1e12) {
    throw ValidationError("povm_state_tomography: M map numerically singular");
  }
  Vector p(4);
  if (mode.exact) {
    for (std::size_t a = 0; a < 4; ++a) {
      p(static_cast<Eigen::Index>(a)) =
          (u.effects[a] * rho.matrix).trace().real();
    }
  } else {
    const DensityOperator joint{tensor_product(rho.matrix, u.ancilla.matrix)};
    RandomSource rng = RandomSource::derive(mode.seed, 0);
    const auto h = sample_outcomes(joint, u.observable, mode.shots, rng);
    const auto f = h.frequencies();
    for (std::size_t a = 0; a < 4; ++a) p(static_cast<Eigen::Index>(a)) = f[a];
  }
  const Vector x = u.m_map.colPivHouseholderQr().solve(p);
  Matrix est(u.d, u.d);
  for (Eigen::Index n = 0; n < u.d; ++n)
    for (Eigen::Index m = 0; m < u.d; ++m) est(n, m) = x(n * u.d + m);
  return est;
}

double povm_expectation_via_f(const Matrix& obs_on_system,
                              const UniversalObservable& u,
                              const DensityOperator& rho) {
  if (obs_on_system.rows() != u.d || obs_on_system.cols() != u.d ||
      rho.matrix.rows() != u.d) {
    throw SizeError("povm_expectation_via_f: dimension mismatch");
  }
  const auto basis = unit_pauli_basis();
  Matrix f = Matrix::Zero(u.d * u.d, u.d * u.d);
  for (std::size_t a = 0; a < basis.size(); ++a) {
    const Complex denom = (u.ancilla.matrix * basis[a]).trace();
    if (std::abs(denom) < 1e-12) {
      throw ValidationError(
          "povm_expectation_via_f: Tr(r E_a) vanishes for a = " +
          std::to_string(a));
    }
    f += ((obs_on_system * basis[a].adjoint()).trace() / denom) *
         tensor_product(basis[a], basis[a]);
  }
  const Matrix joint = tensor_product(rho.matrix, u.ancilla.matrix);
  const double via_f = (f * joint).trace().real();
  const double direct = (obs_on_system * rho.matrix).trace().real();
  if (std::abs(via_f - direct) > 1e-8) {
    throw ValidationError("povm_expectation_via_f: identity check failed");
  }
  return via_f;
}

PovmQptResult povm_qpt(const KrausChannel& ch, const SamplingMode& mode) {
  mode.check();
  if (ch.n != 1) {
    throw ScopeError("povm_qpt: only one principal qubit is supported");
  }
  const UniversalObservable u =
      build_universal_observable(2, {1, 2, 3, 4}, povm_default_ancilla());
  const DensityOperator rho_e = choi_state(ch);

  // Joint outcome (a1, a2): effect M^{a1} on the principal half, M^{a2} on
  // the ancilla half of the Choi pair; the two extra ancillas are product
  // states, so they are already traced into the effects.
  std::vector<double> p(16);
  Matrix l2(16, 16);
  for (int a1 = 0; a1 < 4; ++a1) {
    for (int a2 = 0; a2 < 4; ++a2) {
      const Matrix f = tensor_product(u.effects[static_cast<std::size_t>(a1)],
                                      u.effects[static_cast<std::size_t>(a2)]);
      const Eigen::Index row = a1 * 4 + a2;
      for (Eigen::Index v = 0; v < 4; ++v)
        for (Eigen::Index uu = 0; uu < 4; ++uu) l2(row, v * 4 + uu) = f(uu, v);
      p[static_cast<std::size_t>(row)] = (f * rho_e.matrix).trace().real();
    }
  }

  Eigen::JacobiSVD<Matrix> svd(l2);
  const double smin = svd.singularValues().minCoeff();
  if (smin < 1e-14 * svd.singularValues().maxCoeff()) {
    throw ValidationError("povm_qpt: composite linear map is singular");
  }

  Vector rhs(16);
  if (mode.exact) {
    for (Eigen::Index i = 0; i < 16; ++i) rhs(i) = p[static_cast<std::size_t>(i)];
  } else {
    double norm = 0.0;
    for (double& v : p) { v = std::max(0.0, v); norm += v; }
    for (double& v : p) v /= norm;
    RandomSource rng = RandomSource::derive(mode.seed, 0);
    const auto counts = multinomial_sample(p, mode.shots, rng);
    for (Eigen::Index i = 0; i < 16; ++i) {
      rhs(i) = static_cast<double>(counts[static_cast<std::size_t>(i)]) /
               static_cast<double>(mode.shots);
    }
  }

  const Vector x = l2.colPivHouseholderQr().solve(rhs);
  Matrix est(4, 4);
  for (Eigen::Index v = 0; v < 4; ++v)
    for (Eigen::Index uu = 0; uu < 4; ++uu) est(v, uu) = x(v * 4 + uu);

  PovmQptResult res;
  res.chi = choi_to_chi(est, 1);
  res.condition_number = svd.singularValues().maxCoeff() / smin;
  return res;
}

}  // namespace qpt
