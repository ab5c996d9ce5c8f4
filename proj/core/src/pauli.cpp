#include "qpt/pauli.hpp"

#include <array>

namespace qpt {

namespace {

const Complex kI(0.0, 1.0);

Matrix make_pauli(int letter) {
  Matrix m(2, 2);
  switch (letter) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, -kI, kI, 0; break;
    default: m << 1, 0, 0, -1; break;
  }
  return m;
}

// product_letter[a][b] and product_phase[a][b] encode sigma_a sigma_b.
constexpr int kProductLetter[4][4] = {
    {0, 1, 2, 3},
    {1, 0, 3, 2},
    {2, 3, 0, 1},
    {3, 2, 1, 0},
};
// Phase exponent e with sigma_a sigma_b = i^e sigma_c, e in {0,1,2,3}.
constexpr int kProductPhaseExp[4][4] = {
    {0, 0, 0, 0},
    {0, 0, 1, 3},
    {0, 3, 0, 1},
    {0, 1, 3, 0},
};

Complex phase_from_exp(int e) {
  switch (e & 3) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

}  // namespace

PauliString::PauliString(int qubits, std::uint64_t index)
    : qubits_(qubits), index_(index) {
  if (qubits < 1 || qubits > 32) {
    throw SizeError("PauliString: qubit count out of range");
  }
  const std::uint64_t limit =
      qubits >= 32 ? ~std::uint64_t{0} : (std::uint64_t{1} << (2 * qubits));
  if (qubits < 32 && index >= limit) {
    throw ArgumentError("PauliString: index out of range for qubit count");
  }
}

PauliString PauliString::from_letters(const std::string& letters) {
  if (letters.empty()) throw SizeError("PauliString: empty letter string");
  std::uint64_t index = 0;
  for (char c : letters) {
    int d;
    switch (c) {
      case 'I': d = 0; break;
      case 'X': d = 1; break;
      case 'Y': d = 2; break;
      case 'Z': d = 3; break;
      default: throw ArgumentError(std::string("PauliString: bad letter ") + c);
    }
    index = index * 4 + static_cast<std::uint64_t>(d);
  }
  return PauliString(static_cast<int>(letters.size()), index);
}

int PauliString::letter(int q) const {
  const int shift = 2 * (qubits_ - 1 - q);
  return static_cast<int>((index_ >> shift) & 3u);
}

std::string PauliString::letters() const {
  static const char kNames[] = "IXYZ";
  std::string out(static_cast<std::size_t>(qubits_), 'I');
  for (int q = 0; q < qubits_; ++q) out[static_cast<std::size_t>(q)] = kNames[letter(q)];
  return out;
}

Matrix PauliString::matrix() const {
  Matrix m = make_pauli(letter(0));
  for (int q = 1; q < qubits_; ++q) m = tensor_product(m, make_pauli(letter(q)));
  return m;
}

Complex PauliString::entry(Eigen::Index row, Eigen::Index col) const {
  Complex phase(1, 0);
  for (int q = 0; q < qubits_; ++q) {
    const int shift = qubits_ - 1 - q;
    const int r = static_cast<int>((row >> shift) & 1);
    const int c = static_cast<int>((col >> shift) & 1);
    switch (letter(q)) {
      case 0:
        if (r != c) return {0, 0};
        break;
      case 1:
        if (r == c) return {0, 0};
        break;
      case 2:
        if (r == c) return {0, 0};
        phase *= (r == 1) ? kI : -kI;
        break;
      default:
        if (r != c) return {0, 0};
        if (r == 1) phase = -phase;
        break;
    }
  }
  return phase;
}

bool PauliString::commutes_with(const PauliString& other) const {
  if (qubits_ != other.qubits_) {
    throw SizeError("commutes_with: qubit count mismatch");
  }
  int anti = 0;
  for (int q = 0; q < qubits_; ++q) {
    const int a = letter(q), b = other.letter(q);
    if (a != 0 && b != 0 && a != b) ++anti;
  }
  return (anti % 2) == 0;
}

std::pair<PauliString, Complex> pauli_product(const PauliString& a,
                                              const PauliString& b) {
  if (a.qubits() != b.qubits()) {
    throw SizeError("pauli_product: qubit count mismatch");
  }
  std::uint64_t index = 0;
  int phase_exp = 0;
  for (int q = 0; q < a.qubits(); ++q) {
    const int la = a.letter(q), lb = b.letter(q);
    index = index * 4 + static_cast<std::uint64_t>(kProductLetter[la][lb]);
    phase_exp += kProductPhaseExp[la][lb];
  }
  return {PauliString(a.qubits(), index), phase_from_exp(phase_exp)};
}

std::vector<Matrix> pauli_basis(int k) {
  if (k < 1) throw SizeError("pauli_basis: k must be >= 1");
  if (k > 6) throw SizeError("pauli_basis: k > 6 exceeds the memory budget");
  const std::uint64_t count = std::uint64_t{1} << (2 * k);
  std::vector<Matrix> out;
  out.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    out.push_back(PauliString(k, i).matrix());
  }
  return out;
}

const Matrix& pauli_i() {
  static const Matrix m = make_pauli(0);
  return m;
}
const Matrix& pauli_x() {
  static const Matrix m = make_pauli(1);
  return m;
}
const Matrix& pauli_y() {
  static const Matrix m = make_pauli(2);
  return m;
}
const Matrix& pauli_z() {
  static const Matrix m = make_pauli(3);
  return m;
}

}  // namespace qpt
