#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qpt/matrix.hpp"
#include "qpt/rng.hpp"

namespace qpt {

// Hermitian observable held as its spectral decomposition. Degenerate
// eigenvalues are merged into a single projector, so projectors.size() is the
// number of physically distinguishable outcomes.
struct Observable {
  Matrix matrix;
  std::vector<double> eigenvalues;  // one per projector, strictly distinct
  std::vector<Matrix> projectors;   // orthogonal, idempotent, sum to I

  // Diagonalizes m; eigenvalues closer than merge_tol share a projector.
  static Observable from_matrix(const Matrix& m, double merge_tol = 1e-8);
  // Builds from an explicit resolution of identity; validates orthogonality,
  // completeness, and distinct eigenvalue labels.
  static Observable from_projectors(std::vector<double> eigenvalues,
                                    std::vector<Matrix> projectors,
                                    double tol = kDefaultTol);

  Eigen::Index dim() const { return matrix.rows(); }
  std::size_t outcome_count() const { return projectors.size(); }
};

struct OutcomeHistogram {
  std::vector<std::uint64_t> counts;  // one bin per projector
  std::uint64_t seed = 0;
  std::string setting_label;

  std::uint64_t total() const;
  std::vector<double> frequencies() const;  // counts_i / total
};

// Shared estimation-mode switch for the tomography schemes. Exact mode
// evaluates traces; sampled mode draws `shots` per experimental setting from
// streams derived as RandomSource::derive(seed, setting_index).
struct SamplingMode {
  bool exact = true;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;

  static SamplingMode exact_mode() { return {}; }
  static SamplingMode sampled(std::uint64_t shots, std::uint64_t seed) {
    return {false, shots, seed};
  }
  void check() const;  // sampled with shots == 0 -> argument error
};

// p_i = Tr(rho P_i). Values in [-tol, 0) are clipped to 0 and the vector is
// renormalized; a probability below -tol reports an invalid state.
std::vector<double> outcome_probabilities(const DensityOperator& rho,
                                          const Observable& obs,
                                          double tol = kDefaultTol);

// Multinomial draw of `shots` outcomes; deterministic given rng's seed, which
// is recorded in the histogram.
OutcomeHistogram sample_outcomes(const DensityOperator& rho,
                                 const Observable& obs, std::uint64_t shots,
                                 RandomSource& rng,
                                 std::string setting_label = "");

// mu = sum lambda_i f_i, xi = sqrt(sum lambda_i^2 f_i - mu^2).
std::pair<double, double> empirical_mean_and_deviation(
    const OutcomeHistogram& h, const std::vector<double>& eigenvalues);

// Rank-1 projectors onto Phi+, Psi+, Psi-, Phi- with outcome labels 0..3.
// Equivalent to jointly reading ZZ and XX: Phi+ -> (+1,+1), Psi+ -> (-1,+1),
// Psi- -> (-1,-1), Phi- -> (+1,-1).
Observable bell_observable();

// CSV with header setting_label,seed,N,count_0..count_{v-1}. All histograms
// in one file must have the same outcome count; labels must not contain
// commas or newlines.
std::string histograms_to_csv(const std::vector<OutcomeHistogram>& hs);
std::vector<OutcomeHistogram> histograms_from_csv(const std::string& text);

}  // namespace qpt
