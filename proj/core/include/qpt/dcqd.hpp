#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "qpt/channel.hpp"
#include "qpt/measurement.hpp"

namespace qpt {

// Direct characterization of quantum dynamics for one principal qubit.
// Four entangled preparations feed a fixed Bell-state measurement: the
// population configuration reads the chi diagonal straight off the outcome
// frequencies, and each coherence configuration pins down one conjugate pair
// of off-diagonal elements through a small linear solve.

enum class DcqdKind { population, coherence_z, coherence_x, coherence_y };

struct DcqdConfiguration {
  DcqdKind kind = DcqdKind::population;
  std::string label;                     // "population", "coherence_Z", ...
  DensityOperator input_state;           // principal qubit first, then ancilla
  std::string stabilizer;                // e.g. "Z^A Z^B" (pair for population)
  std::string normalizer;                // "none" for the population row
  Complex alpha{0.0, 0.0};
  Complex beta{0.0, 0.0};
  // chi elements this configuration determines, as (row, col) of the upper
  // triangle; the population row lists the four diagonal entries.
  std::vector<std::pair<int, int>> target_elements;
};

struct DcqdReport {
  ChiMatrix chi;
  // Row c = raw Bell-outcome frequencies of configuration c in the order
  // (Phi+, Psi+, Psi-, Phi-).
  Eigen::MatrixXd bell_frequencies;
  // Number of previously measured quantities each configuration's targets
  // depend on: 0 for populations (frequencies reported verbatim), 2 for each
  // coherence pair (the two sector populations entering its linear system).
  std::array<int, 4> inversion_depth{};
  int config_count = 4;
};

Complex dcqd_default_alpha();  // sqrt(0.8)

// The four preparations of the scheme. beta = sqrt(1-|alpha|^2) * e^{i pi/4};
// the fixed relative phase keeps Im(alpha * conj(beta)) bounded away from
// zero whenever the magnitude constraints hold for a real-positive alpha.
// Rejects |alpha| within 1e-6 of {0, 1/sqrt(2), 1} and Im(alpha*conj(beta))
// smaller than 1e-9 in magnitude. Each returned input state is verified to be
// a +1 eigenstate of its stabilizer(s).
std::vector<DcqdConfiguration> dcqd_configurations(Complex alpha);

// Bell-outcome frequencies of (E (x) I)|Phi+><Phi+| reported directly as
// (chi_00, chi_11, chi_22, chi_33); no inversion is applied. Sampled mode
// draws from the stream RandomSource::derive(mode.seed, 0).
Eigen::VectorXd dcqd_populations(const KrausChannel& ch,
                                 const SamplingMode& mode);

// Recovers the six upper-triangle chi elements from the three coherence
// configurations (streams derive(mode.seed, 1..3)) and returns the full
// Hermitian chi with the supplied diagonal. Per configuration the four Bell
// frequencies give four real equations in (Re, Im) of the two targets; the
// coefficients Tr[P_B (E_m (x) I) rho_c (E_n (x) I)] are evaluated
// analytically in the input state, and population terms are subtracted from
// the right-hand side before the solve.
ChiMatrix dcqd_coherences(const KrausChannel& ch,
                          const Eigen::VectorXd& populations,
                          const SamplingMode& mode,
                          Complex alpha = dcqd_default_alpha());

// Runs all four configurations and assembles the report.
DcqdReport dcqd_full(const KrausChannel& ch, const SamplingMode& mode,
                     Complex alpha = dcqd_default_alpha());

}  // namespace qpt
