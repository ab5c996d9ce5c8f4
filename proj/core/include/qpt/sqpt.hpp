#pragma once

#include <string>
#include <vector>

#include "qpt/channel.hpp"
#include "qpt/measurement.hpp"

namespace qpt {

// Standard process tomography: 4^n physical preparations, Pauli observables
// on each output, lambda_kl = Tr(E_k E(rho_l)), least-squares solve of
// B vec(chi) = lambda.
//
// Operator-basis element rho_l is the matrix unit |a><b| whose per-qubit
// base-4 digit of l is 2a+b (qubit 0 most significant). Each matrix unit is a
// fixed linear combination of the four physical populations
//   |m><n| = |+><+| + i|i+><i+| - (1+i)/2 (|m><m| + |n><n|)
// with |+> = (|m>+|n>)/sqrt2, |i+> = (|m>+i|n>)/sqrt2.
struct SqptPlan {
  int n = 1;
  std::vector<DensityOperator> inputs;    // 4^n physical preparations
  std::vector<std::string> input_labels;  // per-qubit letters 0, 1, +, +i
  // combo(l, j): rho_l = sum_j combo(l, j) inputs[j]
  Matrix combo;

  Eigen::Index basis_size() const { return combo.rows(); }
  std::uint64_t config_count() const;  // 16^n
};

SqptPlan sqpt_inputs(int n);  // n <= 3

// lambda vector indexed k * 4^n + l (observable k, operator-basis input l).
// Sampled mode measures the +/-1 projectors of each nontrivial Pauli string
// on every physical preparation, one derived stream per (input j, observable
// k) setting; the identity observable contributes exactly 1.
std::vector<Complex> sqpt_measure(const SqptPlan& plan, const KrausChannel& ch,
                                  const SamplingMode& mode);

// System matrix: row (k, l) = k * 4^n + l, column (m, nn) = m * 4^n + nn,
// entry Tr(E_k E_m rho_l E_nn^dag), assembled from exact Pauli products.
Matrix sqpt_b_matrix(int n);

struct SqptResult {
  ChiMatrix chi;
  double residual = 0.0;           // ||B vec(chi) - lambda||_2
  double min_chi_eigenvalue = 0.0;
  std::uint64_t config_count = 0;
  bool clipped = false;
};

// Least-squares pseudoinverse solve with relative singular-value cutoff
// 1e-10. clip_to_psd floors negative chi eigenvalues at 0 and rescales to the
// pre-clip trace; off by default and flagged in the result.
SqptResult sqpt_reconstruct(const std::vector<Complex>& lambda, int n,
                            bool clip_to_psd = false);

// Convenience composition of the three steps above.
SqptResult sqpt_run(const KrausChannel& ch, const SamplingMode& mode,
                    bool clip_to_psd = false);

}  // namespace qpt
