#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qpt/matrix.hpp"

namespace qpt {

enum class Scheme { sqpt, aapt_jsm, aapt_mub, aapt_povm, dcqd };

// Display name ("SQPT", "AAPT-JSM", ...) and CLI token ("sqpt", "jsm", ...).
std::string scheme_display_name(Scheme s);
std::string scheme_token(Scheme s);
Scheme scheme_from_token(const std::string& token);  // ArgumentError on miss

// One row of the per-scheme resource accounting. Exact integer counts for the
// chosen n together with the asymptotic gate-cost classes; nu_k is the
// outcome-space size per measurement setting entering the good-statistics
// sample-size rule. nu_special is nonzero only when a single setting differs
// from the rest (the full-basis setting of the unbiased-bases scheme).
struct ResourceRow {
  Scheme scheme = Scheme::sqpt;
  std::uint64_t hilbert_dim = 0;  // per experimental configuration
  std::uint64_t n_inputs = 0;
  std::uint64_t n_meas_per_input = 0;
  std::uint64_t n_exp = 0;  // n_inputs * n_meas_per_input
  std::string gates_per_meas;
  std::string gates_per_meas_nn;  // nearest-neighbor variant, may be empty
  std::string overall;
  std::string overall_nn;  // nearest-neighbor variant, may be empty
  std::uint64_t nu_k = 0;
  std::uint64_t nu_special = 0;
  std::string measurement;   // apparatus class
  std::string interactions;  // required couplings
};

// Rows for all five schemes; 1 <= n <= 10 keeps every count inside uint64.
std::vector<ResourceRow> resource_table(int n);

struct ChernoffQuery {
  double p = 0.0;        // true outcome probability (ignored when nu > 0)
  double delta = 0.0;    // relative error, in (0, 1]
  double eps = 0.0;      // admissible failure probability, in (0, 1]
  std::uint64_t nu = 0;  // outcome-space size for the good-statistics form
};

// Failure-probability upper bound exp(-p N delta^2 / 3).
double chernoff_bound(const ChernoffQuery& q, std::uint64_t n_samples);

// Smallest N with chernoff_bound <= eps: ceil(3/(p delta^2) ln(1/eps)), or
// with nu > 0 the good-statistics form ceil(3 nu/delta^2 ln(1/eps)) under the
// uniform assumption p = 1/nu. Values within 1e-9 of an integer are snapped
// down before the ceiling so exact arithmetic is not punished.
std::uint64_t required_samples(const ChernoffQuery& q);

// Total ensemble measurements for a scheme at size n: sum over settings of
// the per-setting good-statistics sample count times the input multiplicity.
// With uniform = true the common 16^n * ceil(3/delta^2 ln(1/eps)) scaling all
// schemes share under the uniformity assumption is reported instead.
std::uint64_t total_measurements(Scheme s, int n, double delta, double eps,
                                 bool uniform);

// N2 with xi1/sqrt(N1) = xi2/sqrt(N2), i.e. N1 (xi2/xi1)^2.
double confidence_equalize(double xi1, double n1, double xi2);

struct QcbResult {
  double value = 1.0;       // min over alpha of Tr[rho^alpha sigma^(1-alpha)]
  double alpha_star = 0.0;  // minimizing exponent
};

// Quantum Chernoff bound between two density matrices. Eigendecomposition
// powers on a 101-point alpha grid with golden-section refinement around the
// grid minimum. Zero eigenvalues follow the support convention: they drop out
// of rho^0 and sigma^0, matching the orthogonal-pure-state limit.
QcbResult quantum_chernoff_bound(const Matrix& rho, const Matrix& sigma,
                                 double tol = 1e-9);

struct ChiDistance {
  double frobenius = 0.0;
  double qcb = 1.0;  // QCB of the two chi matrices normalized to unit trace
};

// Frobenius distance of the raw chi matrices plus the QCB of their
// density-matrix normalizations (negative eigenvalue dust is clipped and the
// trace renormalized before comparing, so finite-shot estimates are usable).
ChiDistance chi_distance_metrics(const Matrix& chi_a, const Matrix& chi_b);

}  // namespace qpt
