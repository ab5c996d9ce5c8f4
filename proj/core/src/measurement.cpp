#include "qpt/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "qpt/common.hpp"

namespace qpt {

namespace {

void check_observable(const Observable& obs, double tol) {
  if (obs.projectors.empty()) throw ValidationError("observable: no projectors");
  if (obs.eigenvalues.size() != obs.projectors.size()) {
    throw ValidationError("observable: eigenvalue/projector count mismatch");
  }
  const Eigen::Index d = obs.projectors.front().rows();
  Matrix sum = Matrix::Zero(d, d);
  for (std::size_t i = 0; i < obs.projectors.size(); ++i) {
    const Matrix& p = obs.projectors[i];
    if (p.rows() != d || p.cols() != d) {
      throw SizeError("observable: projector shape mismatch");
    }
    if ((p * p - p).norm() > tol * static_cast<double>(d)) {
      throw ValidationError("observable: projector not idempotent");
    }
    for (std::size_t j = i + 1; j < obs.projectors.size(); ++j) {
      if ((p * obs.projectors[j]).norm() > tol * static_cast<double>(d)) {
        throw ValidationError("observable: projectors not orthogonal");
      }
      if (std::abs(obs.eigenvalues[i] - obs.eigenvalues[j]) <= tol) {
        throw ValidationError("observable: eigenvalue labels not distinct");
      }
    }
    sum += p;
  }
  if ((sum - Matrix::Identity(d, d)).norm() > tol * static_cast<double>(d)) {
    throw ValidationError("observable: projectors do not resolve identity");
  }
}

}  // namespace

void SamplingMode::check() const {
  if (!exact && shots == 0) {
    throw ArgumentError("sampled mode requires shots >= 1");
  }
}

Observable Observable::from_matrix(const Matrix& m, double merge_tol) {
  if (m.rows() != m.cols()) throw SizeError("observable: matrix not square");
  if (!is_hermitian(m, 1e-8)) {
    throw ValidationError("observable: matrix not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()));
  const auto& vals = es.eigenvalues();
  const auto& vecs = es.eigenvectors();

  Observable obs;
  obs.matrix = m;
  Eigen::Index i = 0;
  while (i < vals.size()) {
    Eigen::Index j = i + 1;
    while (j < vals.size() && vals(j) - vals(j - 1) <= merge_tol) ++j;
    Matrix p = Matrix::Zero(m.rows(), m.cols());
    double mean = 0.0;
    for (Eigen::Index k = i; k < j; ++k) {
      p.noalias() += vecs.col(k) * vecs.col(k).adjoint();
      mean += vals(k);
    }
    obs.projectors.push_back(std::move(p));
    obs.eigenvalues.push_back(mean / static_cast<double>(j - i));
    i = j;
  }
  return obs;
}

Observable Observable::from_projectors(std::vector<double> eigenvalues,
                                       std::vector<Matrix> projectors,
                                       double tol) {
  Observable obs;
  obs.eigenvalues = std::move(eigenvalues);
  obs.projectors = std::move(projectors);
  check_observable(obs, tol);
  const Eigen::Index d = obs.projectors.front().rows();
  obs.matrix = Matrix::Zero(d, d);
  for (std::size_t i = 0; i < obs.projectors.size(); ++i) {
    obs.matrix += obs.eigenvalues[i] * obs.projectors[i];
  }
  return obs;
}

std::uint64_t OutcomeHistogram::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

std::vector<double> OutcomeHistogram::frequencies() const {
  const std::uint64_t n = total();
  if (n == 0) throw ArgumentError("histogram: empty");
  std::vector<double> f(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    f[i] = static_cast<double>(counts[i]) / static_cast<double>(n);
  }
  return f;
}

std::vector<double> outcome_probabilities(const DensityOperator& rho,
                                          const Observable& obs, double tol) {
  if (rho.matrix.rows() != obs.projectors.front().rows()) {
    throw SizeError("outcome_probabilities: dimension mismatch");
  }
  std::vector<double> p(obs.outcome_count());
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double v = (rho.matrix * obs.projectors[i]).trace().real();
    if (v < -tol) {
      throw ValidationError("outcome_probabilities: probability below -tol");
    }
    p[i] = std::clamp(v, 0.0, 1.0);
  }
  const double s = std::accumulate(p.begin(), p.end(), 0.0);
  if (std::abs(s - 1.0) > 1e-6) {
    throw ValidationError("outcome_probabilities: probabilities sum to " +
                          std::to_string(s));
  }
  for (double& v : p) v /= s;
  return p;
}

OutcomeHistogram sample_outcomes(const DensityOperator& rho,
                                 const Observable& obs, std::uint64_t shots,
                                 RandomSource& rng,
                                 std::string setting_label) {
  if (shots == 0) throw ArgumentError("sample_outcomes: N must be >= 1");
  OutcomeHistogram h;
  h.seed = rng.seed();
  h.setting_label = std::move(setting_label);
  h.counts = multinomial_sample(outcome_probabilities(rho, obs), shots, rng);
  return h;
}

std::pair<double, double> empirical_mean_and_deviation(
    const OutcomeHistogram& h, const std::vector<double>& eigenvalues) {
  if (h.counts.size() != eigenvalues.size()) {
    throw ArgumentError("empirical_mean_and_deviation: length mismatch");
  }
  const auto f = h.frequencies();
  double mu = 0.0, second = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    mu += eigenvalues[i] * f[i];
    second += eigenvalues[i] * eigenvalues[i] * f[i];
  }
  const double var = std::max(0.0, second - mu * mu);
  return {mu, std::sqrt(var)};
}

Observable bell_observable() {
  const double r = 1.0 / std::sqrt(2.0);
  Vector phi_p = Vector::Zero(4), psi_p = Vector::Zero(4),
         psi_m = Vector::Zero(4), phi_m = Vector::Zero(4);
  phi_p(0) = r; phi_p(3) = r;
  psi_p(1) = r; psi_p(2) = r;
  psi_m(1) = r; psi_m(2) = -r;
  phi_m(0) = r; phi_m(3) = -r;
  std::vector<Matrix> proj = {phi_p * phi_p.adjoint(), psi_p * psi_p.adjoint(),
                              psi_m * psi_m.adjoint(), phi_m * phi_m.adjoint()};
  return Observable::from_projectors({0.0, 1.0, 2.0, 3.0}, std::move(proj));
}

std::string histograms_to_csv(const std::vector<OutcomeHistogram>& hs) {
  if (hs.empty()) throw ArgumentError("histograms_to_csv: empty list");
  const std::size_t v = hs.front().counts.size();
  std::ostringstream out;
  out << "setting_label,seed,N";
  for (std::size_t i = 0; i < v; ++i) out << ",count_" << i;
  out << "\n";
  for (const auto& h : hs) {
    if (h.counts.size() != v) {
      throw ArgumentError("histograms_to_csv: mixed outcome counts");
    }
    if (h.setting_label.find_first_of(",\n\r") != std::string::npos) {
      throw ValidationError("histograms_to_csv: label contains , or newline");
    }
    out << h.setting_label << "," << h.seed << "," << h.total();
    for (std::uint64_t c : h.counts) out << "," << c;
    out << "\n";
  }
  return out.str();
}

std::vector<OutcomeHistogram> histograms_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("histogram CSV: empty");
  std::vector<OutcomeHistogram> out;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream row(std::move(line));
    std::string field;
    OutcomeHistogram h;
    if (!std::getline(row, h.setting_label, ',')) {
      throw ValidationError("histogram CSV: short row");
    }
    try {
      if (!std::getline(row, field, ',')) throw std::invalid_argument("seed");
      h.seed = std::stoull(field);
      if (!std::getline(row, field, ',')) throw std::invalid_argument("N");
      const std::uint64_t n = std::stoull(field);
      while (std::getline(row, field, ',')) {
        h.counts.push_back(std::stoull(field));
      }
      if (h.total() != n) {
        throw ValidationError("histogram CSV: counts do not sum to N");
      }
    } catch (const std::invalid_argument&) {
      throw ValidationError("histogram CSV: bad numeric field");
    } catch (const std::out_of_range&) {
      throw ValidationError("histogram CSV: numeric field out of range");
    }
    out.push_back(std::move(h));
  }
  return out;
}

}  // namespace qpt
