#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qpt/channel.hpp"
#include "qpt/measurement.hpp"

namespace qpt {

// Mutually unbiased bases for m qubits built from a partition of the 4^m - 1
// nontrivial Pauli strings into d + 1 mutually commuting classes (d = 2^m).
// Basis k is the joint eigenbasis of class k; every cross-basis overlap
// satisfies |<a|b>|^2 = 1/d.
struct MubFamily {
  int m = 1;
  Eigen::Index d = 2;
  // d + 1 classes of d - 1 Pauli string indices each.
  std::vector<std::vector<std::uint64_t>> pauli_classes;
  // Column i of bases[k] is the i-th vector of basis k.
  std::vector<Matrix> bases;
  // signs[k](j, i) = eigenvalue (+/-1) of class-k string j on basis vector i.
  std::vector<Eigen::MatrixXd> signs;
};

// Deterministic construction for m in {1, 2, 3}: classes found by
// lexicographic backtracking over commuting generator sets, joint eigenbases
// by diagonalizing sum_j 3^j S_j, columns phase-fixed so the first
// significant component is real positive. For m = 1 the classes are
// presented in Z, X, Y order; for m = 2 in the conventional two-qubit
// partition order.
MubFamily mub_construct(int m);

// Reconstruction from the d + 1 basis measurements: every nontrivial Pauli
// expectation is a signed sum of one basis's outcome probabilities, and
// rho_est = (I + sum <P> P) / d. Exact mode reproduces rho to rounding;
// sampled estimates need not be PSD, hence the raw matrix return.
Matrix mub_state_tomography(const DensityOperator& rho, const MubFamily& fam,
                            const SamplingMode& mode);

struct MubQptResult {
  ChiMatrix chi;
  int setting_count = 0;          // 4^n + 1
  double min_choi_eigenvalue = 0.0;
};

// Channel tomography for one principal qubit: state-tomograph the channel's
// Choi state with the m = 2 family (5 settings), then change basis to chi.
MubQptResult mub_qpt(const KrausChannel& ch, const SamplingMode& mode);

// Order-of-magnitude circuit cost of one MUB measurement, in units where the
// constant is 1: n^2 with nonlocal two-body access, n^3 nearest-neighbor.
std::uint64_t mub_gate_cost(int n, bool nearest_neighbor);

// Text listing of the partition, one class per line.
std::string mub_dump(int m);

}  // namespace qpt
