#pragma once

#include <vector>

#include "qpt/channel.hpp"
#include "qpt/measurement.hpp"

namespace qpt {

// Single-setting generalized measurement built from the normal operator
// Omega = sum_a c_a E_a (x) E_a over the unit-normalized Pauli basis
// E_a = sigma_a / sqrt(2), measured jointly on system (x) known ancilla r.
// Outcome probabilities are linear in the system state through the effects
// M^a = Tr_B[P_a (I (x) r)], so one inversion recovers rho.
struct UniversalObservable {
  Eigen::Index d = 2;           // system dimension
  std::vector<double> coeffs;   // after any degeneracy repair
  Matrix omega;                 // d^2 x d^2
  Observable observable;        // spectral projectors P_a, d^2 outcomes
  DensityOperator ancilla;      // r, full rank
  std::vector<Matrix> effects;  // M^a on the system, one per outcome
  // p = m_map vec(rho) with vec(rho)[n*d + m] = rho_nm.
  Matrix m_map;
  double condition_number = 0.0;
  double min_eigen_gap = 0.0;
};

// d = 2 only. Degenerate spectra are repaired by c_a -> c_a + a * 1e-3
// (a counted from 1) and re-checked once; r must be full rank.
UniversalObservable build_universal_observable(Eigen::Index d,
                                               std::vector<double> coeffs,
                                               const DensityOperator& r);

// Ancilla default used across the scheme: all Pauli components nonzero so
// both the M inversion and expectation denominators are well posed.
DensityOperator povm_default_ancilla();

// Measures {P_a} on rho (x) r and inverts the M system. Sampled estimates
// need not be PSD, hence the raw matrix return.
Matrix povm_state_tomography(const DensityOperator& rho,
                             const UniversalObservable& u,
                             const SamplingMode& mode);

// <O>_rho reproduced as <F_O(Omega)>_{rho (x) r} with
// F_O = sum_a [Tr(O E_a) / Tr(r E_a)] E_a (x) E_a.
double povm_expectation_via_f(const Matrix& obs_on_system,
                              const UniversalObservable& u,
                              const DensityOperator& rho);

struct PovmQptResult {
  ChiMatrix chi;
  int config_count = 1;         // single experimental configuration
  int outcome_count = 16;
  double condition_number = 0.0;  // of the composite linear map
};

// One principal qubit: the channel's Choi pair (A, B) each gets an ancilla
// in state r; the commuting pair (Omega on A+B1, Omega on B+B2) is read out
// jointly as 16 outcomes and one 16 x 16 inversion returns the Choi state.
PovmQptResult povm_qpt(const KrausChannel& ch, const SamplingMode& mode);

}  // namespace qpt
