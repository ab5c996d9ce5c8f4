#include "qpt/stats.hpp"

#include <algorithm>
#include <cmath>

#include "qpt/common.hpp"

namespace qpt {

namespace {

std::uint64_t pow_u64(std::uint64_t base, int exp) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

// ceil with a 1e-9 snap so values that are integers up to roundoff do not
// get bumped one unit up.
std::uint64_t snapped_ceil(double x) {
  if (x <= 0.0) return 0;
  return static_cast<std::uint64_t>(std::ceil(x - 1e-9));
}

void check_delta_eps(double delta, double eps) {
  if (!(delta > 0.0) || delta > 1.0) {
    throw ArgumentError("delta must lie in (0, 1]");
  }
  if (!(eps > 0.0) || eps > 1.0) {
    throw ArgumentError("eps must lie in (0, 1]");
  }
}

// Per-setting sample count under the uniform assumption p = 1/nu.
std::uint64_t samples_for_nu(std::uint64_t nu, double delta, double eps) {
  ChernoffQuery q;
  q.nu = nu;
  q.delta = delta;
  q.eps = eps;
  return required_samples(q);
}

// x^a for eigenvalues with the support convention: zero eigenvalues
// contribute nothing at any exponent in [0, 1].
double eig_pow(double x, double a) {
  if (x <= 1e-15) return 0.0;
  return std::pow(x, a);
}

}  // namespace

std::string scheme_display_name(Scheme s) {
  switch (s) {
    case Scheme::sqpt: return "SQPT";
    case Scheme::aapt_jsm: return "AAPT-JSM";
    case Scheme::aapt_mub: return "AAPT-MUB";
    case Scheme::aapt_povm: return "AAPT-POVM";
    case Scheme::dcqd: return "DCQD";
  }
  throw ArgumentError("unknown scheme");
}

std::string scheme_token(Scheme s) {
  switch (s) {
    case Scheme::sqpt: return "sqpt";
    case Scheme::aapt_jsm: return "jsm";
    case Scheme::aapt_mub: return "mub";
    case Scheme::aapt_povm: return "povm";
    case Scheme::dcqd: return "dcqd";
  }
  throw ArgumentError("unknown scheme");
}

Scheme scheme_from_token(const std::string& token) {
  if (token == "sqpt") return Scheme::sqpt;
  if (token == "jsm" || token == "aapt_jsm") return Scheme::aapt_jsm;
  if (token == "mub" || token == "aapt_mub") return Scheme::aapt_mub;
  if (token == "povm" || token == "aapt_povm") return Scheme::aapt_povm;
  if (token == "dcqd") return Scheme::dcqd;
  throw ArgumentError("unknown scheme token: " + token);
}

std::vector<ResourceRow> resource_table(int n) {
  if (n < 1 || n > 10) {
    throw ArgumentError("resource_table: n must lie in [1, 10]");
  }
  const std::uint64_t p2 = pow_u64(2, n);
  const std::uint64_t p4 = pow_u64(4, n);
  const std::uint64_t p16 = pow_u64(16, n);

  std::vector<ResourceRow> rows(5);

  rows[0].scheme = Scheme::sqpt;
  rows[0].hilbert_dim = p2;
  rows[0].n_inputs = p4;
  rows[0].n_meas_per_input = p4;
  rows[0].gates_per_meas = "O(n)";
  rows[0].overall = "O(n 16^n)";
  rows[0].nu_k = 1;
  rows[0].measurement = "1-qubit";
  rows[0].interactions = "single-body";

  rows[1].scheme = Scheme::aapt_jsm;
  rows[1].hilbert_dim = p2 * p2;
  rows[1].n_inputs = 1;
  rows[1].n_meas_per_input = p16;
  rows[1].gates_per_meas = "O(n)";
  rows[1].overall = "O(n 16^n)";
  rows[1].nu_k = 1;
  rows[1].measurement = "joint 1-qubit";
  rows[1].interactions = "single-body";

  rows[2].scheme = Scheme::aapt_mub;
  rows[2].hilbert_dim = p2 * p2;
  rows[2].n_inputs = 1;
  rows[2].n_meas_per_input = p4 + 1;
  rows[2].gates_per_meas = "O(n^2)";
  rows[2].gates_per_meas_nn = "O(n^3)";
  rows[2].overall = "O(n^2 4^n)";
  rows[2].overall_nn = "O(n^3 4^n)";
  rows[2].nu_k = p4 - 1;
  rows[2].nu_special = p4;
  rows[2].measurement = "MUB";
  rows[2].interactions = "many-body";

  rows[3].scheme = Scheme::aapt_povm;
  rows[3].hilbert_dim = p4 * p4;
  rows[3].n_inputs = 1;
  rows[3].n_meas_per_input = 1;
  rows[3].gates_per_meas = "O(4^(2n))";
  rows[3].overall = "O(4^(2n))";
  rows[3].nu_k = p16;
  rows[3].measurement = "POVM";
  rows[3].interactions = "many-body";

  rows[4].scheme = Scheme::dcqd;
  rows[4].hilbert_dim = p2 * p2;
  rows[4].n_inputs = p4;
  rows[4].n_meas_per_input = 1;
  rows[4].gates_per_meas = "O(n)";
  rows[4].overall = "O(n 4^n)";
  rows[4].nu_k = p4;
  rows[4].measurement = "BSM";
  rows[4].interactions = "single- and two-body";

  for (auto& r : rows) r.n_exp = r.n_inputs * r.n_meas_per_input;
  return rows;
}

double chernoff_bound(const ChernoffQuery& q, std::uint64_t n_samples) {
  return std::exp(-q.p * static_cast<double>(n_samples) * q.delta * q.delta /
                  3.0);
}

std::uint64_t required_samples(const ChernoffQuery& q) {
  check_delta_eps(q.delta, q.eps);
  const double log_term = std::log(1.0 / q.eps);
  if (log_term == 0.0) return 0;
  if (q.nu > 0) {
    return snapped_ceil(3.0 * static_cast<double>(q.nu) /
                        (q.delta * q.delta) * log_term);
  }
  if (!(q.p > 0.0)) {
    throw ArgumentError("required_samples: p must be positive");
  }
  return snapped_ceil(3.0 / (q.p * q.delta * q.delta) * log_term);
}

std::uint64_t total_measurements(Scheme s, int n, double delta, double eps,
                                 bool uniform) {
  check_delta_eps(delta, eps);
  if (n < 1 || n > 10) {
    throw ArgumentError("total_measurements: n must lie in [1, 10]");
  }
  const std::uint64_t p4 = pow_u64(4, n);
  const std::uint64_t p16 = pow_u64(16, n);
  if (uniform) {
    return p16 * samples_for_nu(1, delta, eps);
  }
  switch (s) {
    case Scheme::sqpt:
    case Scheme::aapt_jsm:
      // 16^n settings of a single two-outcome expectation value each.
      return p16 * samples_for_nu(1, delta, eps);
    case Scheme::aapt_mub:
      return p4 * samples_for_nu(p4 - 1, delta, eps) +
             samples_for_nu(p4, delta, eps);
    case Scheme::aapt_povm:
      return samples_for_nu(p16, delta, eps);
    case Scheme::dcqd:
      return p4 * samples_for_nu(p4, delta, eps);
  }
  throw ArgumentError("unknown scheme");
}

double confidence_equalize(double xi1, double n1, double xi2) {
  if (!(xi1 > 0.0)) {
    throw ArgumentError("confidence_equalize: xi1 must be positive");
  }
  if (!(n1 >= 1.0)) {
    throw ArgumentError("confidence_equalize: N1 must be at least 1");
  }
  if (xi2 < 0.0) {
    throw ArgumentError("confidence_equalize: xi2 must be nonnegative");
  }
  const double ratio = xi2 / xi1;
  return n1 * ratio * ratio;
}

QcbResult quantum_chernoff_bound(const Matrix& rho, const Matrix& sigma,
                                 double tol) {
  if (rho.rows() != rho.cols() || sigma.rows() != sigma.cols() ||
      rho.rows() != sigma.rows()) {
    throw SizeError("quantum_chernoff_bound: dimension mismatch");
  }
  for (const Matrix* m : {&rho, &sigma}) {
    if (!is_hermitian(*m, 1e-8)) {
      throw ValidationError("quantum_chernoff_bound: input not Hermitian");
    }
    if (std::abs(m->trace().real() - 1.0) > 1e-6) {
      throw ValidationError("quantum_chernoff_bound: input trace is not 1");
    }
  }
  Eigen::SelfAdjointEigenSolver<Matrix> er(rho), es(sigma);
  if (er.eigenvalues().minCoeff() < -tol ||
      es.eigenvalues().minCoeff() < -tol) {
    throw ValidationError(
        "quantum_chernoff_bound: input has a negative eigenvalue");
  }

  const Eigen::Index dim = rho.rows();
  Eigen::VectorXd d = er.eigenvalues().cwiseMax(0.0);
  Eigen::VectorXd e = es.eigenvalues().cwiseMax(0.0);
  // overlap(i, j) = |<v_i|w_j>|^2
  Eigen::MatrixXd overlap(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      overlap(i, j) = std::norm(
          er.eigenvectors().col(i).dot(es.eigenvectors().col(j)));
    }
  }
  const auto f = [&](double a) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < dim; ++i) {
      if (d(i) <= 1e-15) continue;
      const double da = eig_pow(d(i), a);
      for (Eigen::Index j = 0; j < dim; ++j) {
        if (e(j) <= 1e-15) continue;
        s += da * eig_pow(e(j), 1.0 - a) * overlap(i, j);
      }
    }
    return s;
  };

  int best = 0;
  double best_val = f(0.0);
  for (int i = 1; i <= 100; ++i) {
    const double v = f(i / 100.0);
    if (v < best_val) {
      best_val = v;
      best = i;
    }
  }
  double lo = std::max(0.0, (best - 1) / 100.0);
  double hi = std::min(1.0, (best + 1) / 100.0);
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - gr * (hi - lo);
  double x2 = lo + gr * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  while (hi - lo > 1e-10) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = f(x2);
    }
  }
  QcbResult res;
  const double refined = 0.5 * (lo + hi);
  const double f_refined = f(refined);
  if (f_refined < best_val) {
    res.alpha_star = refined;
    res.value = f_refined;
  } else {
    res.alpha_star = best / 100.0;
    res.value = best_val;
  }
  res.value = std::clamp(res.value, 0.0, 1.0);
  return res;
}

ChiDistance chi_distance_metrics(const Matrix& chi_a, const Matrix& chi_b) {
  if (chi_a.rows() != chi_b.rows() || chi_a.cols() != chi_b.cols() ||
      chi_a.rows() != chi_a.cols()) {
    throw SizeError("chi_distance_metrics: dimension mismatch");
  }
  ChiDistance out;
  out.frobenius = frobenius_distance(chi_a, chi_b);

  const auto normalize = [](const Matrix& m) {
    const Matrix h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    const Eigen::VectorXd vals = es.eigenvalues().cwiseMax(0.0);
    const double tr = vals.sum();
    if (tr <= 1e-12) {
      throw ValidationError(
          "chi_distance_metrics: chi has no positive spectral weight");
    }
    return Matrix(es.eigenvectors() * (vals / tr).asDiagonal() *
                  es.eigenvectors().adjoint());
  };
  out.qcb = quantum_chernoff_bound(normalize(chi_a), normalize(chi_b)).value;
  return out;
}

}  // namespace qpt
