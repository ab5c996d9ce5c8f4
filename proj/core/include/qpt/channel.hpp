#pragma once

#include <string>
#include <vector>

#include "qpt/matrix.hpp"
#include "qpt/pauli.hpp"
#include "qpt/rng.hpp"

namespace qpt {

struct KrausChannel {
  int n = 1;                      // principal qubits
  std::vector<Matrix> operators;  // each 2^n x 2^n
  Eigen::Index dim() const { return Eigen::Index{1} << n; }
};

// Process matrix in the Pauli-string basis with Tr-normalization constant
// d = 2^n, so chi_00 = 1 for the identity channel.
struct ChiMatrix {
  int n = 1;
  Matrix chi;  // 4^n x 4^n, canonical Pauli index order
  Eigen::Index dim() const { return Eigen::Index{1} << n; }
};

struct ChannelSpec {
  enum class Kind {
    identity,
    bit_flip,
    depolarizing,
    amplitude_damping,
    phase_damping,
    unitary,
    kraus_file,
  };
  Kind kind = Kind::identity;
  double parameter = 0.0;  // p / gamma / lambda / angle in radians
  char axis = 'z';         // unitary only: 'x', 'y' or 'z'
  std::string path;        // kraus_file only

  // Accepts identity | bit_flip(p) | depolarizing(p) | amplitude_damping(g)
  // | phase_damping(l) | unitary(axis,angle) | kraus_file(path).
  static ChannelSpec parse(const std::string& text);
  std::string to_string() const;
};

struct ValidityReport {
  double min_chi_eigenvalue = 0.0;
  double tp_deficit = 0.0;            // ||sum Ai^dag Ai - I||_F
  double hermiticity_residual = 0.0;  // ||chi - chi^dag||_F
  bool is_cp = false;
  bool is_tp = false;
  bool is_hermitian = false;
  bool all_pass() const { return is_cp && is_tp && is_hermitian; }
};

ChiMatrix kraus_to_chi(const KrausChannel& ch);
// Eigendecomposition route; eigenvalues in [-tol, tol] are dropped as
// numerical zeros, anything below -tol is a validity error.
KrausChannel chi_to_kraus(const ChiMatrix& c, double tol = kDefaultTol);

// E (x) I on a register whose leading factor matches the channel; ancilla_dim
// = 1 means the plain channel action.
DensityOperator apply_channel(const KrausChannel& ch, const DensityOperator& rho,
                              Eigen::Index ancilla_dim = 1);
DensityOperator apply_channel(const ChiMatrix& c, const DensityOperator& rho,
                              Eigen::Index ancilla_dim = 1);

// (E (x) I)(|Phi+><Phi+|) with |Phi+> = sum_i |i>|i>/sqrt(d); n <= 3.
DensityOperator choi_state(const KrausChannel& ch);

// Choi <-> chi basis change: chi = U^dag rho_E U / d with U columns the
// row-major vectorized Pauli strings (U^dag U = d I). The raw-matrix overload
// serves estimators whose finite-shot Choi estimates need not be PSD.
ChiMatrix choi_to_chi(const DensityOperator& rho_e, int n);
ChiMatrix choi_to_chi(const Matrix& rho_e, int n);

KrausChannel named_channel(const ChannelSpec& spec);

ValidityReport validate_channel(const KrausChannel& ch, double tol = kDefaultTol);
ValidityReport validate_chi(const ChiMatrix& c, double tol = kDefaultTol);

// Stinespring dilation of a seeded Haar unitary; env_dim = 0 picks d^2.
KrausChannel random_cptp_channel(int n, RandomSource& rng,
                                 Eigen::Index env_dim = 0);

// File formats: channel {"n": int, "kraus": [matrix...]};
// chi {"n": int, "basis": "pauli", "chi": matrix}.
std::string channel_to_json(const KrausChannel& ch);
KrausChannel channel_from_json(const std::string& text);
std::string chi_to_json(const ChiMatrix& c);
ChiMatrix chi_from_json(const std::string& text);
KrausChannel load_channel_file(const std::string& path);

}  // namespace qpt
