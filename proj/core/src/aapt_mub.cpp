#include "qpt/aapt_mub.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "qpt/pauli.hpp"

namespace qpt {

namespace {

std::uint64_t product_index(int m, std::uint64_t a, std::uint64_t b) {
  return pauli_product(PauliString(m, a), PauliString(m, b)).first.index();
}

bool commute(int m, std::uint64_t a, std::uint64_t b) {
  return PauliString(m, a).commutes_with(PauliString(m, b));
}

// Group closure of the generators, identity excluded, sorted ascending.
std::vector<std::uint64_t> span_of(int m, const std::vector<std::uint64_t>& gens) {
  std::set<std::uint64_t> span;
  for (std::uint64_t g : gens) {
    std::vector<std::uint64_t> extra;
    extra.push_back(g);
    for (std::uint64_t s : span) extra.push_back(product_index(m, g, s));
    span.insert(extra.begin(), extra.end());
  }
  return {span.begin(), span.end()};
}

bool find_partition(int m, std::set<std::uint64_t>& unused,
                    std::vector<std::vector<std::uint64_t>>& classes);

// Grow gens to m pairwise-commuting independent generators, candidates tried
// in increasing index order, then claim the span and recurse.
bool extend_class(int m, std::set<std::uint64_t>& unused,
                  std::vector<std::uint64_t>& gens,
                  std::vector<std::vector<std::uint64_t>>& classes) {
  if (static_cast<int>(gens.size()) == m) {
    const auto cls = span_of(m, gens);
    for (std::uint64_t s : cls) {
      if (unused.find(s) == unused.end()) return false;
    }
    for (std::uint64_t s : cls) unused.erase(s);
    classes.push_back(cls);
    if (find_partition(m, unused, classes)) return true;
    classes.pop_back();
    for (std::uint64_t s : cls) unused.insert(s);
    return false;
  }
  const std::uint64_t count = std::uint64_t{1} << (2 * m);
  const auto partial = span_of(m, gens);
  for (std::uint64_t c = gens.back() + 1; c < count; ++c) {
    if (unused.find(c) == unused.end()) continue;
    bool commutes_all = true;
    for (std::uint64_t g : gens) {
      if (!commute(m, g, c)) { commutes_all = false; break; }
    }
    if (!commutes_all) continue;
    if (std::find(partial.begin(), partial.end(), c) != partial.end()) continue;
    gens.push_back(c);
    if (extend_class(m, unused, gens, classes)) return true;
    gens.pop_back();
  }
  return false;
}

// Partition search: every class is the span of m commuting generators, the
// first generator forced to the smallest string not yet covered. The first
// solution in lexicographic order is deterministic.
bool find_partition(int m, std::set<std::uint64_t>& unused,
                    std::vector<std::vector<std::uint64_t>>& classes) {
  if (unused.empty()) return true;
  std::vector<std::uint64_t> gens = {*unused.begin()};
  return extend_class(m, unused, gens, classes);
}

void validate_family(const MubFamily& fam) {
  const Eigen::Index d = fam.d;
  std::set<std::uint64_t> seen;
  for (const auto& cls : fam.pauli_classes) {
    if (static_cast<Eigen::Index>(cls.size()) != d - 1) {
      throw ValidationError("mub: class size mismatch");
    }
    for (std::size_t a = 0; a < cls.size(); ++a) {
      if (!seen.insert(cls[a]).second) {
        throw ValidationError("mub: classes not disjoint");
      }
      for (std::size_t b = a + 1; b < cls.size(); ++b) {
        if (!commute(fam.m, cls[a], cls[b])) {
          throw ValidationError("mub: class not mutually commuting");
        }
      }
    }
  }
  if (seen.size() != static_cast<std::size_t>(d) * static_cast<std::size_t>(d) - 1) {
    throw ValidationError("mub: classes do not cover the Pauli strings");
  }
  for (std::size_t x = 0; x < fam.bases.size(); ++x) {
    for (std::size_t y = x + 1; y < fam.bases.size(); ++y) {
      const Matrix overlap = fam.bases[x].adjoint() * fam.bases[y];
      for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
          const double sq = std::norm(overlap(i, j));
          if (std::abs(sq - 1.0 / static_cast<double>(d)) > 1e-10) {
            throw ValidationError("mub: bases not mutually unbiased");
          }
        }
      }
    }
  }
}

}  // namespace

MubFamily mub_construct(int m) {
  if (m < 1 || m > 3) throw SizeError("mub_construct: m must be in [1, 3]");
  MubFamily fam;
  fam.m = m;
  fam.d = Eigen::Index{1} << m;

  std::set<std::uint64_t> unused;
  for (std::uint64_t i = 1; i < (std::uint64_t{1} << (2 * m)); ++i) unused.insert(i);
  if (!find_partition(m, unused, fam.pauli_classes)) {
    throw ValidationError("mub_construct: partition search failed");
  }

  // Conventional presentation: single qubit as Z, X, Y; two qubits in the
  // usual table order keyed by a representative member.
  const std::vector<std::uint64_t>* keys = nullptr;
  static const std::vector<std::uint64_t> kKeys1 = {3, 1, 2};
  static const std::vector<std::uint64_t> kKeys2 = {3, 1, 2, 7, 6};
  if (m == 1) keys = &kKeys1;
  if (m == 2) keys = &kKeys2;
  if (keys != nullptr) {
    std::vector<std::vector<std::uint64_t>> ordered;
    for (std::uint64_t key : *keys) {
      for (auto& cls : fam.pauli_classes) {
        if (std::find(cls.begin(), cls.end(), key) != cls.end()) {
          ordered.push_back(cls);
          break;
        }
      }
    }
    if (ordered.size() != fam.pauli_classes.size()) {
      throw ValidationError("mub_construct: presentation reorder failed");
    }
    fam.pauli_classes = std::move(ordered);
  }

  // Joint eigenbasis per class: distinct integer weights separate the joint
  // eigenspaces of the commuting strings.
  for (const auto& cls : fam.pauli_classes) {
    Matrix w = Matrix::Zero(fam.d, fam.d);
    double weight = 1.0;
    for (std::uint64_t s : cls) {
      w += weight * PauliString(m, s).matrix();
      weight *= 3.0;
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(w);
    Matrix basis = es.eigenvectors();
    for (Eigen::Index i = 0; i < fam.d; ++i) {
      for (Eigen::Index r = 0; r < fam.d; ++r) {
        const Complex v = basis(r, i);
        if (std::abs(v) > 1e-6) {
          basis.col(i) *= std::conj(v) / std::abs(v);
          break;
        }
      }
    }
    Eigen::MatrixXd sign(static_cast<Eigen::Index>(cls.size()), fam.d);
    for (std::size_t j = 0; j < cls.size(); ++j) {
      const Matrix pauli = PauliString(m, cls[j]).matrix();
      for (Eigen::Index i = 0; i < fam.d; ++i) {
        const double v = (basis.col(i).adjoint() * pauli * basis.col(i))(0).real();
        sign(static_cast<Eigen::Index>(j), i) = v > 0 ? 1.0 : -1.0;
        if (std::abs(std::abs(v) - 1.0) > 1e-9) {
          throw ValidationError("mub_construct: eigenvector sign not +/-1");
        }
      }
    }
    fam.bases.push_back(std::move(basis));
    fam.signs.push_back(std::move(sign));
  }

  validate_family(fam);
  return fam;
}

Matrix mub_state_tomography(const DensityOperator& rho, const MubFamily& fam,
                            const SamplingMode& mode) {
  mode.check();
  if (rho.matrix.rows() != fam.d) {
    throw SizeError("mub_state_tomography: dimension mismatch");
  }
  const Eigen::Index d = fam.d;
  Matrix est = Matrix::Identity(d, d);

  for (std::size_t k = 0; k < fam.pauli_classes.size(); ++k) {
    const Matrix& basis = fam.bases[k];
    std::vector<double> freq(static_cast<std::size_t>(d));
    if (mode.exact) {
      for (Eigen::Index i = 0; i < d; ++i) {
        freq[static_cast<std::size_t>(i)] = std::max(
            0.0, (basis.col(i).adjoint() * rho.matrix * basis.col(i))(0).real());
      }
    } else {
      std::vector<double> probs(static_cast<std::size_t>(d));
      double norm = 0.0;
      for (Eigen::Index i = 0; i < d; ++i) {
        probs[static_cast<std::size_t>(i)] = std::max(
            0.0, (basis.col(i).adjoint() * rho.matrix * basis.col(i))(0).real());
        norm += probs[static_cast<std::size_t>(i)];
      }
      for (double& p : probs) p /= norm;
      RandomSource rng = RandomSource::derive(mode.seed, k);
      const auto counts = multinomial_sample(probs, mode.shots, rng);
      for (Eigen::Index i = 0; i < d; ++i) {
        freq[static_cast<std::size_t>(i)] =
            static_cast<double>(counts[static_cast<std::size_t>(i)]) /
            static_cast<double>(mode.shots);
      }
    }
    for (std::size_t j = 0; j < fam.pauli_classes[k].size(); ++j) {
      double expectation = 0.0;
      for (Eigen::Index i = 0; i < d; ++i) {
        expectation += fam.signs[k](static_cast<Eigen::Index>(j), i) *
                       freq[static_cast<std::size_t>(i)];
      }
      est += expectation * PauliString(fam.m, fam.pauli_classes[k][j]).matrix();
    }
  }
  return est / static_cast<double>(d);
}

MubQptResult mub_qpt(const KrausChannel& ch, const SamplingMode& mode) {
  if (ch.n != 1) {
    throw ScopeError("mub_qpt: only one principal qubit is supported");
  }
  const DensityOperator rho_e = choi_state(ch);
  const MubFamily fam = mub_construct(2);
  const Matrix est = mub_state_tomography(rho_e, fam, mode);

  MubQptResult res;
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (est + est.adjoint()),
                                           Eigen::EigenvaluesOnly);
  res.min_choi_eigenvalue = es.eigenvalues().minCoeff();
  res.chi = choi_to_chi(est, ch.n);
  res.setting_count = static_cast<int>(fam.pauli_classes.size());
  return res;
}

std::uint64_t mub_gate_cost(int n, bool nearest_neighbor) {
  if (n < 1) throw ArgumentError("mub_gate_cost: n must be >= 1");
  const std::uint64_t nn = static_cast<std::uint64_t>(n);
  return nearest_neighbor ? nn * nn * nn : nn * nn;
}

std::string mub_dump(int m) {
  const MubFamily fam = mub_construct(m);
  std::ostringstream out;
  for (std::size_t k = 0; k < fam.pauli_classes.size(); ++k) {
    out << "MUB " << (k + 1) << ":";
    for (std::uint64_t s : fam.pauli_classes[k]) {
      out << " " << PauliString(m, s).letters();
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace qpt
