#include "qpt/dcqd.hpp"

#include <cmath>

#include "qpt/pauli.hpp"
#include "qpt/rng.hpp"

namespace qpt {

namespace {

DensityOperator pure_state(const Vector& psi) {
  return make_density_operator(psi * psi.adjoint());
}

void verify_stabilizer(const Matrix& s, const DensityOperator& rho,
                       const std::string& label) {
  if (((s * rho.matrix) - rho.matrix).norm() > 1e-10) {
    throw ValidationError("dcqd_configurations: input for " + label +
                          " is not a +1 eigenstate of its stabilizer");
  }
}

Eigen::VectorXd measure_bell(const DensityOperator& out,
                             const SamplingMode& mode,
                             std::uint64_t config_index) {
  const Observable bell = bell_observable();
  Eigen::VectorXd f(4);
  if (mode.exact) {
    const auto p = outcome_probabilities(out, bell);
    for (int b = 0; b < 4; ++b) f(b) = p[static_cast<std::size_t>(b)];
  } else {
    RandomSource rng = RandomSource::derive(mode.seed, config_index);
    const auto h = sample_outcomes(out, bell, mode.shots, rng);
    const auto freq = h.frequencies();
    for (int b = 0; b < 4; ++b) f(b) = freq[static_cast<std::size_t>(b)];
  }
  return f;
}

// One coherence configuration: the four Bell frequencies are linear in the
// two unknown chi pairs once the population terms are moved to the right.
void solve_coherence(const DcqdConfiguration& cfg,
                     const Eigen::VectorXd& freqs,
                     const Eigen::VectorXd& pops, Matrix& chi) {
  const std::array<Matrix, 4> sig = {pauli_i(), pauli_x(), pauli_y(),
                                     pauli_z()};
  const Matrix id = Matrix::Identity(2, 2);
  const Observable bell = bell_observable();
  const DensityOperator& rho = cfg.input_state;

  Eigen::Matrix<Complex, 4, 4> t[4];
  for (int b = 0; b < 4; ++b) {
    for (int m = 0; m < 4; ++m) {
      for (int nn = 0; nn < 4; ++nn) {
        const Matrix em = tensor_product(sig[static_cast<std::size_t>(m)], id);
        const Matrix en = tensor_product(sig[static_cast<std::size_t>(nn)], id);
        t[b](m, nn) = (bell.projectors[static_cast<std::size_t>(b)] * em *
                       rho.matrix * en)
                          .trace();
      }
    }
  }

  const auto [m1, n1] = cfg.target_elements[0];
  const auto [m2, n2] = cfg.target_elements[1];
  Eigen::Matrix4d k;
  Eigen::Vector4d rhs;
  for (int b = 0; b < 4; ++b) {
    k(b, 0) = 2.0 * t[b](m1, n1).real();
    k(b, 1) = -2.0 * t[b](m1, n1).imag();
    k(b, 2) = 2.0 * t[b](m2, n2).real();
    k(b, 3) = -2.0 * t[b](m2, n2).imag();
    double diag = 0.0;
    for (int m = 0; m < 4; ++m) diag += pops(m) * t[b](m, m).real();
    rhs(b) = freqs(b) - diag;
  }
  Eigen::JacobiSVD<Eigen::Matrix4d> svd(k);
  if (svd.singularValues().minCoeff() < 1e-10) {
    throw ValidationError("dcqd: coherence system singular for " + cfg.label);
  }
  const Eigen::Vector4d x = k.colPivHouseholderQr().solve(rhs);
  chi(m1, n1) = Complex(x(0), x(1));
  chi(n1, m1) = std::conj(chi(m1, n1));
  chi(m2, n2) = Complex(x(2), x(3));
  chi(n2, m2) = std::conj(chi(m2, n2));
}

}  // namespace

Complex dcqd_default_alpha() { return Complex(std::sqrt(0.8), 0.0); }

std::vector<DcqdConfiguration> dcqd_configurations(Complex alpha) {
  const double a = std::abs(alpha);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  if (std::abs(a) < 1e-6 || std::abs(a - inv_sqrt2) < 1e-6 ||
      std::abs(a - 1.0) < 1e-6) {
    throw ArgumentError(
        "dcqd_configurations: |alpha| and |beta| must stay away from 0 and "
        "1/sqrt(2)");
  }
  const Complex beta =
      std::sqrt(1.0 - a * a) * std::exp(Complex(0.0, M_PI / 4.0));
  if (std::abs(std::imag(alpha * std::conj(beta))) < 1e-9) {
    throw ArgumentError(
        "dcqd_configurations: Im(alpha * conj(beta)) must be nonzero");
  }

  const Complex i(0.0, 1.0);
  Vector phi_plus(4), ket_z(4), ket_x(4), ket_y(4);
  phi_plus << inv_sqrt2, 0.0, 0.0, inv_sqrt2;
  ket_z << alpha, 0.0, 0.0, beta;
  ket_x << 0.5 * (alpha + beta), 0.5 * (alpha - beta), 0.5 * (alpha - beta),
      0.5 * (alpha + beta);
  ket_y << 0.5 * (alpha + beta), 0.5 * i * (alpha - beta),
      0.5 * i * (alpha - beta), -0.5 * (alpha + beta);

  std::vector<DcqdConfiguration> configs(4);
  configs[0] = {DcqdKind::population,  "population",  pure_state(phi_plus),
                "Z^A Z^B, X^A X^B",    "none",        Complex(inv_sqrt2, 0.0),
                Complex(inv_sqrt2, 0.0),
                {{0, 0}, {1, 1}, {2, 2}, {3, 3}}};
  configs[1] = {DcqdKind::coherence_z, "coherence_Z", pure_state(ket_z),
                "Z^A Z^B",             "X^A X^B",     alpha, beta,
                {{0, 3}, {1, 2}}};
  configs[2] = {DcqdKind::coherence_x, "coherence_X", pure_state(ket_x),
                "X^A X^B",             "Z^A Z^B",     alpha, beta,
                {{0, 1}, {2, 3}}};
  configs[3] = {DcqdKind::coherence_y, "coherence_Y", pure_state(ket_y),
                "Y^A Y^B",             "Z^A Z^B",     alpha, beta,
                {{0, 2}, {1, 3}}};

  const Matrix zz = tensor_product(pauli_z(), pauli_z());
  const Matrix xx = tensor_product(pauli_x(), pauli_x());
  const Matrix yy = tensor_product(pauli_y(), pauli_y());
  verify_stabilizer(zz, configs[0].input_state, configs[0].label);
  verify_stabilizer(xx, configs[0].input_state, configs[0].label);
  verify_stabilizer(zz, configs[1].input_state, configs[1].label);
  verify_stabilizer(xx, configs[2].input_state, configs[2].label);
  verify_stabilizer(yy, configs[3].input_state, configs[3].label);
  return configs;
}

Eigen::VectorXd dcqd_populations(const KrausChannel& ch,
                                 const SamplingMode& mode) {
  mode.check();
  if (ch.n != 1) {
    throw ScopeError("dcqd_populations: only one principal qubit is supported");
  }
  const auto configs = dcqd_configurations(dcqd_default_alpha());
  const DensityOperator out = apply_channel(ch, configs[0].input_state, 2);
  return measure_bell(out, mode, 0);
}

ChiMatrix dcqd_coherences(const KrausChannel& ch,
                          const Eigen::VectorXd& populations,
                          const SamplingMode& mode, Complex alpha) {
  mode.check();
  if (ch.n != 1) {
    throw ScopeError("dcqd_coherences: only one principal qubit is supported");
  }
  if (populations.size() != 4) {
    throw SizeError("dcqd_coherences: need the four chi populations");
  }
  const auto configs = dcqd_configurations(alpha);
  const double czA =
      std::norm(alpha) - std::norm(configs[1].beta);
  if (std::abs(czA) < 1e-9) {
    throw ValidationError(
        "dcqd_coherences: stabilizer-basis expectation vanishes, alpha is "
        "degenerate");
  }
  ChiMatrix c;
  c.n = 1;
  c.chi = Matrix::Zero(4, 4);
  for (int m = 0; m < 4; ++m) c.chi(m, m) = populations(m);
  for (std::size_t cfg = 1; cfg < 4; ++cfg) {
    const DensityOperator out =
        apply_channel(ch, configs[cfg].input_state, 2);
    const Eigen::VectorXd freqs = measure_bell(out, mode, cfg);
    solve_coherence(configs[cfg], freqs, populations, c.chi);
  }
  return c;
}

DcqdReport dcqd_full(const KrausChannel& ch, const SamplingMode& mode,
                     Complex alpha) {
  mode.check();
  if (ch.n != 1) {
    throw ScopeError("dcqd_full: only one principal qubit is supported");
  }
  const auto configs = dcqd_configurations(alpha);

  DcqdReport rep;
  rep.bell_frequencies = Eigen::MatrixXd::Zero(4, 4);
  rep.inversion_depth = {0, 2, 2, 2};
  rep.config_count = 4;

  std::array<Eigen::VectorXd, 4> freqs;
  for (std::size_t cfg = 0; cfg < 4; ++cfg) {
    const DensityOperator out =
        apply_channel(ch, configs[cfg].input_state, 2);
    freqs[cfg] = measure_bell(out, mode, cfg);
    for (int b = 0; b < 4; ++b) {
      rep.bell_frequencies(static_cast<Eigen::Index>(cfg), b) = freqs[cfg](b);
    }
  }

  rep.chi.n = 1;
  rep.chi.chi = Matrix::Zero(4, 4);
  for (int m = 0; m < 4; ++m) rep.chi.chi(m, m) = freqs[0](m);
  for (std::size_t cfg = 1; cfg < 4; ++cfg) {
    solve_coherence(configs[cfg], freqs[cfg], freqs[0], rep.chi.chi);
  }
  return rep;
}

}  // namespace qpt
