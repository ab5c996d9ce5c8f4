#pragma once

#include "qpt/channel.hpp"
#include "qpt/measurement.hpp"

namespace qpt {

// Ancilla-assisted tomography with joint separable Pauli (x) Pauli readout.
// Register layout: principal block A (qubits 0..n-1) then ancilla block B.
//
// Conventions, pinned by round-trip tests:
//   coefficient matrix  varrho_ij = Tr(rho (E_i (x) E_j)^dag) / 4^n
//   joint expectations  alpha_kj  = Tr(rho' (E_k (x) E_j)^dag) / 4^n
// so that alpha = chi_tilde * varrho with
//   chi_tilde_ki = sum_mn chi_mn Tr(E_k E_m E_i E_n) / 2^n.

struct FaithfulInput {
  DensityOperator rho_ab;  // 2n qubits
  int n = 1;
  Matrix coeff;            // varrho, 4^n x 4^n
  int schmidt_number = 0;  // singular values of varrho above 1e-10
  double purity = 0.0;     // Tr(rho^2)
  double min_singular_value = 0.0;
  bool faithful = false;   // schmidt_number == 4^n
};

FaithfulInput faithfulness_check(const DensityOperator& rho_ab, int n);

// |Phi+><Phi+| on 2n qubits, the maximally entangled reference input.
DensityOperator bell_input(int n);
// eps |Psi-><Psi-| + (1 - eps) I/4 on 2 qubits.
DensityOperator werner_input(double eps);

// alpha matrix of joint expectations, 4^n x 4^n, index (k, j). Sampled mode
// uses one derived stream per (k, j) setting; identity factors are read out
// by marginalizing Z-basis results on those qubits.
Matrix jsm_measure(const DensityOperator& rho_ab, const KrausChannel& ch,
                   const SamplingMode& mode);

// A-matrix of the second-stage system: row (k, i), column (m, nn), entry
// Tr(E_k E_m E_i E_nn) / 2^n, zero unless the Pauli product is the identity.
Matrix jsm_a_matrix(int n);

struct JsmResult {
  ChiMatrix chi;
  double residual = 0.0;  // ||A vec(chi) - vec(chi_tilde)||
  double min_chi_eigenvalue = 0.0;
  std::uint64_t config_count = 0;  // 16^n
};

// chi_tilde = alpha varrho^{-1}, then solve A vec(chi) = vec(chi_tilde).
// Unfaithful input (min singular value of varrho below 1e-10) is rejected.
JsmResult jsm_reconstruct(const Matrix& alpha, const FaithfulInput& input);

JsmResult jsm_run(const KrausChannel& ch, const DensityOperator& rho_ab,
                  const SamplingMode& mode);

}  // namespace qpt
