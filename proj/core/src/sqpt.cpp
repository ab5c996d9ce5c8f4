#include "qpt/sqpt.hpp"

#include <cmath>

#include "qpt/pauli.hpp"

namespace qpt {

namespace {

// Physical single-qubit preparations, in plan order.
std::vector<Matrix> single_qubit_preps() {
  Vector zero(2), one(2), plus(2), plus_i(2);
  zero << 1, 0;
  one << 0, 1;
  const double r = 1.0 / std::sqrt(2.0);
  plus << r, r;
  plus_i << r, Complex(0, r);
  return {zero * zero.adjoint(), one * one.adjoint(), plus * plus.adjoint(),
          plus_i * plus_i.adjoint()};
}

// Row l = matrix unit |a><b| with digit 2a+b, column j = physical prep.
Matrix single_qubit_combo() {
  Matrix c = Matrix::Zero(4, 4);
  const Complex half_1i(0.5, 0.5);
  c(0, 0) = 1;
  c(1, 0) = -half_1i; c(1, 1) = -half_1i; c(1, 2) = 1; c(1, 3) = Complex(0, 1);
  c(2, 0) = std::conj(-half_1i); c(2, 1) = std::conj(-half_1i);
  c(2, 2) = 1; c(2, 3) = Complex(0, -1);
  c(3, 1) = 1;
  return c;
}

std::vector<int> base4_digits(std::uint64_t value, int n) {
  std::vector<int> digits(static_cast<std::size_t>(n));
  for (int q = n - 1; q >= 0; --q) {
    digits[static_cast<std::size_t>(q)] = static_cast<int>(value & 3u);
    value >>= 2;
  }
  return digits;  // digits[0] is qubit 0, most significant
}

}  // namespace

std::uint64_t SqptPlan::config_count() const {
  std::uint64_t c = 1;
  for (int q = 0; q < n; ++q) c *= 16;
  return c;
}

SqptPlan sqpt_inputs(int n) {
  if (n < 1 || n > 3) throw SizeError("sqpt_inputs: n must be in [1, 3]");
  const auto preps = single_qubit_preps();
  static const char* kLetter[4] = {"0", "1", "+", "+i"};

  SqptPlan plan;
  plan.n = n;
  const std::uint64_t count = std::uint64_t{1} << (2 * n);
  for (std::uint64_t j = 0; j < count; ++j) {
    const auto digits = base4_digits(j, n);
    Matrix state = preps[static_cast<std::size_t>(digits[0])];
    std::string label = kLetter[digits[0]];
    for (int q = 1; q < n; ++q) {
      state = tensor_product(state, preps[static_cast<std::size_t>(digits[static_cast<std::size_t>(q)])]);
      label += std::string(".") + kLetter[digits[static_cast<std::size_t>(q)]];
    }
    plan.inputs.push_back(make_density_operator(state));
    plan.input_labels.push_back(std::move(label));
  }

  plan.combo = single_qubit_combo();
  for (int q = 1; q < n; ++q) {
    plan.combo = tensor_product(plan.combo, single_qubit_combo());
  }
  return plan;
}

std::vector<Complex> sqpt_measure(const SqptPlan& plan, const KrausChannel& ch,
                                  const SamplingMode& mode) {
  mode.check();
  if (ch.n != plan.n) throw SizeError("sqpt_measure: channel/plan size mismatch");
  const Eigen::Index b = plan.basis_size();
  const Eigen::Index d = ch.dim();

  std::vector<DensityOperator> outputs;
  outputs.reserve(plan.inputs.size());
  for (const auto& rho : plan.inputs) outputs.push_back(apply_channel(ch, rho));

  // expectation(j, k) = <E_k> on output j
  Matrix expectation(b, b);
  const Matrix id = Matrix::Identity(d, d);
  for (Eigen::Index k = 0; k < b; ++k) {
    Matrix pauli;
    Observable obs;
    if (k > 0) {
      pauli = PauliString(plan.n, static_cast<std::uint64_t>(k)).matrix();
      if (!mode.exact) {
        obs = Observable::from_projectors(
            {1.0, -1.0}, {0.5 * (id + pauli), 0.5 * (id - pauli)});
      }
    }
    for (Eigen::Index j = 0; j < b; ++j) {
      if (k == 0) {
        expectation(j, k) = 1.0;  // identity observable, no sampling needed
      } else if (mode.exact) {
        expectation(j, k) = (pauli * outputs[static_cast<std::size_t>(j)].matrix).trace();
      } else {
        RandomSource rng = RandomSource::derive(
            mode.seed, static_cast<std::uint64_t>(j) * static_cast<std::uint64_t>(b) +
                           static_cast<std::uint64_t>(k));
        const auto h = sample_outcomes(outputs[static_cast<std::size_t>(j)], obs,
                                       mode.shots, rng);
        const auto [mu, xi] = empirical_mean_and_deviation(h, obs.eigenvalues);
        (void)xi;
        expectation(j, k) = mu;
      }
    }
  }

  // lambda_kl = sum_j combo(l, j) <E_k>_j
  std::vector<Complex> lambda(static_cast<std::size_t>(b) * static_cast<std::size_t>(b));
  for (Eigen::Index k = 0; k < b; ++k) {
    for (Eigen::Index l = 0; l < b; ++l) {
      Complex v = 0;
      for (Eigen::Index j = 0; j < b; ++j) v += plan.combo(l, j) * expectation(j, k);
      lambda[static_cast<std::size_t>(k * b + l)] = v;
    }
  }
  return lambda;
}

Matrix sqpt_b_matrix(int n) {
  if (n < 1 || n > 2) {
    throw SizeError("sqpt_b_matrix: dense system limited to n <= 2");
  }
  const Eigen::Index b = Eigen::Index{1} << (2 * n);
  Matrix bm(b * b, b * b);
  for (Eigen::Index k = 0; k < b; ++k) {
    const PauliString ek(n, static_cast<std::uint64_t>(k));
    for (Eigen::Index m = 0; m < b; ++m) {
      const auto [km, km_phase] =
          pauli_product(ek, PauliString(n, static_cast<std::uint64_t>(m)));
      for (Eigen::Index nn = 0; nn < b; ++nn) {
        // P = E_nn E_k E_m; entry Tr(E_k E_m rho_l E_nn) = phase * P(b_l, a_l)
        const auto [p, p_phase] =
            pauli_product(PauliString(n, static_cast<std::uint64_t>(nn)), km);
        const Complex phase = km_phase * p_phase;
        for (Eigen::Index l = 0; l < b; ++l) {
          Eigen::Index row_a = 0, row_b = 0;
          std::uint64_t rest = static_cast<std::uint64_t>(l);
          for (int q = n - 1; q >= 0; --q) {
            const auto digit = rest & 3u;
            rest >>= 2;
            row_a |= static_cast<Eigen::Index>(digit >> 1) << (n - 1 - q);
            row_b |= static_cast<Eigen::Index>(digit & 1) << (n - 1 - q);
          }
          bm(k * b + l, m * b + nn) = phase * p.entry(row_b, row_a);
        }
      }
    }
  }
  return bm;
}

SqptResult sqpt_reconstruct(const std::vector<Complex>& lambda, int n,
                            bool clip_to_psd) {
  const Eigen::Index b = Eigen::Index{1} << (2 * n);
  if (static_cast<Eigen::Index>(lambda.size()) != b * b) {
    throw SizeError("sqpt_reconstruct: lambda must have 16^n entries");
  }
  const Matrix bm = sqpt_b_matrix(n);
  Vector rhs(b * b);
  for (Eigen::Index i = 0; i < b * b; ++i) rhs(i) = lambda[static_cast<std::size_t>(i)];

  Eigen::BDCSVD<Matrix> svd;
  svd.setThreshold(1e-10);
  svd.compute(bm, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector x = svd.solve(rhs);

  SqptResult res;
  res.residual = (bm * x - rhs).norm();
  Matrix chi(b, b);
  for (Eigen::Index m = 0; m < b; ++m)
    for (Eigen::Index nn = 0; nn < b; ++nn) chi(m, nn) = x(m * b + nn);

  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (chi + chi.adjoint()));
  res.min_chi_eigenvalue = es.eigenvalues().minCoeff();
  if (clip_to_psd && res.min_chi_eigenvalue < 0) {
    const Complex trace_before = chi.trace();
    Matrix clipped = Matrix::Zero(b, b);
    for (Eigen::Index i = 0; i < b; ++i) {
      const double v = es.eigenvalues()(i);
      if (v > 0) {
        clipped.noalias() += v * es.eigenvectors().col(i) *
                             es.eigenvectors().col(i).adjoint();
      }
    }
    const Complex trace_after = clipped.trace();
    if (std::abs(trace_after) > 0) {
      clipped *= trace_before.real() / trace_after.real();
    }
    chi = std::move(clipped);
    res.clipped = true;
  }
  res.chi = ChiMatrix{n, std::move(chi)};
  std::uint64_t configs = 1;
  for (int q = 0; q < n; ++q) configs *= 16;
  res.config_count = configs;
  return res;
}

SqptResult sqpt_run(const KrausChannel& ch, const SamplingMode& mode,
                    bool clip_to_psd) {
  const SqptPlan plan = sqpt_inputs(ch.n);
  return sqpt_reconstruct(sqpt_measure(plan, ch, mode), ch.n, clip_to_psd);
}

}  // namespace qpt
