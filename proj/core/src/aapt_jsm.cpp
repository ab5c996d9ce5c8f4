#include "qpt/aapt_jsm.hpp"

#include <cmath>

#include "qpt/pauli.hpp"

namespace qpt {

namespace {

Eigen::Index pow4(int n) { return Eigen::Index{1} << (2 * n); }

// Columns: +1 eigenvector then -1 eigenvector of the letter (I measured as
// Z). Letter codes: 0 = I, 1 = X, 2 = Y, 3 = Z.
Matrix letter_eigenbasis(int letter) {
  Matrix v(2, 2);
  const double r = 1.0 / std::sqrt(2.0);
  switch (letter) {
    case 0:
    case 3: v << 1, 0, 0, 1; break;
    case 1: v << r, r, r, -r; break;
    case 2: v << r, r, Complex(0, r), Complex(0, -r); break;
    default: throw ArgumentError("unknown Pauli letter");
  }
  return v;
}

Matrix build_a_matrix(int n) {
  const Eigen::Index b = pow4(n);
  Matrix a = Matrix::Zero(b * b, b * b);
  for (Eigen::Index m = 0; m < b; ++m) {
    const PauliString em(n, static_cast<std::uint64_t>(m));
    for (Eigen::Index i = 0; i < b; ++i) {
      const auto [mi, mi_phase] =
          pauli_product(em, PauliString(n, static_cast<std::uint64_t>(i)));
      for (Eigen::Index nn = 0; nn < b; ++nn) {
        const auto [p, p_phase] =
            pauli_product(mi, PauliString(n, static_cast<std::uint64_t>(nn)));
        // E_m E_i E_nn = phase * E_p, so only row k = p is nonzero.
        const Eigen::Index k = static_cast<Eigen::Index>(p.index());
        a(k * b + i, m * b + nn) = mi_phase * p_phase;
      }
    }
  }
  return a;
}

}  // namespace

FaithfulInput faithfulness_check(const DensityOperator& rho_ab, int n) {
  if (n < 1 || n > 2) throw SizeError("faithfulness_check: n must be 1 or 2");
  const Eigen::Index b = pow4(n);
  if (rho_ab.matrix.rows() != b) {
    throw SizeError("faithfulness_check: state is not on 2n qubits");
  }
  FaithfulInput in;
  in.rho_ab = rho_ab;
  in.n = n;
  in.coeff.resize(b, b);
  for (Eigen::Index i = 0; i < b; ++i) {
    for (Eigen::Index j = 0; j < b; ++j) {
      const Matrix pauli =
          PauliString(2 * n, static_cast<std::uint64_t>(i * b + j)).matrix();
      in.coeff(i, j) = (rho_ab.matrix * pauli).trace() / static_cast<double>(b);
    }
  }
  Eigen::JacobiSVD<Matrix> svd(in.coeff);
  const auto& sv = svd.singularValues();
  in.min_singular_value = sv(sv.size() - 1);
  in.schmidt_number = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > 1e-10) ++in.schmidt_number;
  }
  in.faithful = in.schmidt_number == static_cast<int>(b);
  in.purity = (rho_ab.matrix * rho_ab.matrix).trace().real();
  return in;
}

DensityOperator bell_input(int n) {
  if (n < 1 || n > 2) throw SizeError("bell_input: n must be 1 or 2");
  const Eigen::Index d = Eigen::Index{1} << n;
  Vector phi = Vector::Zero(d * d);
  for (Eigen::Index i = 0; i < d; ++i) {
    phi(i * d + i) = 1.0 / std::sqrt(static_cast<double>(d));
  }
  return DensityOperator{phi * phi.adjoint()};
}

DensityOperator werner_input(double eps) {
  if (eps < 0.0 || eps > 1.0) {
    throw ArgumentError("werner_input: eps must lie in [0, 1]");
  }
  Vector psi_m = Vector::Zero(4);
  const double r = 1.0 / std::sqrt(2.0);
  psi_m(1) = r;
  psi_m(2) = -r;
  Matrix rho = eps * (psi_m * psi_m.adjoint()) +
               (1.0 - eps) * 0.25 * Matrix::Identity(4, 4);
  return make_density_operator(rho);
}

Matrix jsm_measure(const DensityOperator& rho_ab, const KrausChannel& ch,
                   const SamplingMode& mode) {
  mode.check();
  const int n = ch.n;
  const Eigen::Index b = pow4(n);
  if (rho_ab.matrix.rows() != b) {
    throw SizeError("jsm_measure: state is not on 2n qubits");
  }
  const DensityOperator rho_out = apply_channel(ch, rho_ab, ch.dim());

  Matrix alpha(b, b);
  for (Eigen::Index k = 0; k < b; ++k) {
    for (Eigen::Index j = 0; j < b; ++j) {
      if (mode.exact) {
        const Matrix pauli =
            PauliString(2 * n, static_cast<std::uint64_t>(k * b + j)).matrix();
        alpha(k, j) = (rho_out.matrix * pauli).trace() / static_cast<double>(b);
        continue;
      }
      if (k == 0 && j == 0) {
        alpha(k, j) = 1.0 / static_cast<double>(b);  // trace, known exactly
        continue;
      }
      const PauliString joint(2 * n, static_cast<std::uint64_t>(k * b + j));
      Matrix basis = letter_eigenbasis(joint.letter(0));
      for (int q = 1; q < 2 * n; ++q) {
        basis = tensor_product(basis, letter_eigenbasis(joint.letter(q)));
      }
      const Matrix rotated = basis.adjoint() * rho_out.matrix * basis;
      std::vector<double> probs(static_cast<std::size_t>(b));
      double norm = 0.0;
      for (Eigen::Index o = 0; o < b; ++o) {
        probs[static_cast<std::size_t>(o)] =
            std::max(0.0, rotated(o, o).real());
        norm += probs[static_cast<std::size_t>(o)];
      }
      for (double& p : probs) p /= norm;
      RandomSource rng = RandomSource::derive(
          mode.seed, static_cast<std::uint64_t>(k * b + j));
      const auto counts = multinomial_sample(probs, mode.shots, rng);
      double mean = 0.0;
      for (Eigen::Index o = 0; o < b; ++o) {
        int sign = 1;
        for (int q = 0; q < 2 * n; ++q) {
          if (joint.letter(q) == 0) continue;  // identity factor, marginalized
          if ((o >> (2 * n - 1 - q)) & 1) sign = -sign;
        }
        mean += sign * static_cast<double>(counts[static_cast<std::size_t>(o)]);
      }
      alpha(k, j) = mean / static_cast<double>(mode.shots) /
                    static_cast<double>(b);
    }
  }
  return alpha;
}

Matrix jsm_a_matrix(int n) {
  switch (n) {
    case 1: {
      static const Matrix a1 = build_a_matrix(1);
      return a1;
    }
    case 2: {
      static const Matrix a2 = build_a_matrix(2);
      return a2;
    }
    default:
      throw SizeError("jsm_a_matrix: n must be 1 or 2");
  }
}

JsmResult jsm_reconstruct(const Matrix& alpha, const FaithfulInput& input) {
  const Eigen::Index b = pow4(input.n);
  if (alpha.rows() != b || alpha.cols() != b) {
    throw SizeError("jsm_reconstruct: alpha must be 4^n x 4^n");
  }
  if (input.min_singular_value < 1e-10) {
    throw ValidationError(
        "jsm_reconstruct: input coefficient matrix is singular; the input "
        "state is not faithful");
  }
  // chi_tilde = alpha varrho^{-1}
  const Matrix chi_tilde = input.coeff.transpose()
                               .colPivHouseholderQr()
                               .solve(alpha.transpose())
                               .transpose();
  Vector rhs(b * b);
  for (Eigen::Index k = 0; k < b; ++k)
    for (Eigen::Index i = 0; i < b; ++i) rhs(k * b + i) = chi_tilde(k, i);

  const Matrix a = jsm_a_matrix(input.n);
  const Vector x = a.colPivHouseholderQr().solve(rhs);

  JsmResult res;
  res.residual = (a * x - rhs).norm();
  Matrix chi(b, b);
  for (Eigen::Index m = 0; m < b; ++m)
    for (Eigen::Index nn = 0; nn < b; ++nn) chi(m, nn) = x(m * b + nn);
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (chi + chi.adjoint()),
                                           Eigen::EigenvaluesOnly);
  res.min_chi_eigenvalue = es.eigenvalues().minCoeff();
  res.chi = ChiMatrix{input.n, std::move(chi)};
  res.config_count = static_cast<std::uint64_t>(b) * static_cast<std::uint64_t>(b);
  return res;
}

JsmResult jsm_run(const KrausChannel& ch, const DensityOperator& rho_ab,
                  const SamplingMode& mode) {
  const FaithfulInput input = faithfulness_check(rho_ab, ch.n);
  return jsm_reconstruct(jsm_measure(rho_ab, ch, mode), input);
}

}  // namespace qpt
