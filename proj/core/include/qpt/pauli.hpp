#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qpt/matrix.hpp"

namespace qpt {

// Canonical index: base-4 digits I=0, X=1, Y=2, Z=3, most-significant digit
// = qubit 0 (the leftmost tensor factor). Tr(Ei^dag Ej) = 2^k delta_ij.
class PauliString {
 public:
  PauliString(int qubits, std::uint64_t index);
  static PauliString from_letters(const std::string& letters);

  int qubits() const { return qubits_; }
  std::uint64_t index() const { return index_; }
  int letter(int q) const;  // 0..3 for qubit q
  std::string letters() const;

  Matrix matrix() const;
  // Single matrix entry in O(qubits); Pauli strings have one nonzero per row.
  Complex entry(Eigen::Index row, Eigen::Index col) const;
  bool commutes_with(const PauliString& other) const;

 private:
  int qubits_;
  std::uint64_t index_;
};

// a*b = phase * c letterwise; exact phase in {1, -1, i, -i}^accumulated.
std::pair<PauliString, Complex> pauli_product(const PauliString& a,
                                              const PauliString& b);

// All 4^k strings as dense matrices in canonical index order; k in [1, 6].
std::vector<Matrix> pauli_basis(int k);

const Matrix& pauli_i();
const Matrix& pauli_x();
const Matrix& pauli_y();
const Matrix& pauli_z();

}  // namespace qpt
