#include "qpt/dcqd.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "qpt/common.hpp"
#include "qpt/pauli.hpp"
#include "test_util.hpp"

namespace qpt {
namespace {

TEST(DcqdConfigurations, FourValidPreparations) {
  const auto cfgs = dcqd_configurations(dcqd_default_alpha());
  ASSERT_EQ(cfgs.size(), 4u);
  EXPECT_EQ(cfgs[0].label, "population");
  EXPECT_EQ(cfgs[1].label, "coherence_Z");
  EXPECT_EQ(cfgs[2].label, "coherence_X");
  EXPECT_EQ(cfgs[3].label, "coherence_Y");
  for (const auto& c : cfgs) {
    EXPECT_NEAR(c.input_state.matrix.trace().real(), 1.0, 1e-12);
    EXPECT_EQ(c.input_state.matrix.rows(), 4);
  }
  // Population input is the maximally entangled pair.
  Vector phi = Vector::Zero(4);
  phi(0) = phi(3) = 1.0 / std::sqrt(2.0);
  EXPECT_LT((cfgs[0].input_state.matrix - Matrix(phi * phi.adjoint())).norm(),
            1e-12);
  // Default magnitudes: |alpha|^2 = 0.8, so <Z^A> = 0.6 on the Z coherence
  // preparation.
  const Matrix za = tensor_product(pauli_z(), pauli_i());
  EXPECT_NEAR((za * cfgs[1].input_state.matrix).trace().real(), 0.6, 1e-12);
}

TEST(DcqdConfigurations, StabilizersHoldByConstruction) {
  const auto cfgs = dcqd_configurations(dcqd_default_alpha());
  const Matrix zz = tensor_product(pauli_z(), pauli_z());
  const Matrix xx = tensor_product(pauli_x(), pauli_x());
  const Matrix yy = tensor_product(pauli_y(), pauli_y());
  const auto stabilized = [](const Matrix& s, const Matrix& rho) {
    return (s * rho - rho).norm() < 1e-10;
  };
  EXPECT_TRUE(stabilized(zz, cfgs[0].input_state.matrix));
  EXPECT_TRUE(stabilized(xx, cfgs[0].input_state.matrix));
  EXPECT_TRUE(stabilized(zz, cfgs[1].input_state.matrix));
  EXPECT_TRUE(stabilized(xx, cfgs[2].input_state.matrix));
  EXPECT_TRUE(stabilized(yy, cfgs[3].input_state.matrix));
}

TEST(DcqdConfigurations, RejectsDegenerateAmplitudes) {
  EXPECT_THROW(dcqd_configurations(Complex(0.0, 0.0)), ArgumentError);
  EXPECT_THROW(dcqd_configurations(Complex(1.0, 0.0)), ArgumentError);
  EXPECT_THROW(dcqd_configurations(Complex(1.0 / std::sqrt(2.0), 0.0)),
               ArgumentError);
  // Phase chosen so alpha and beta align: Im(alpha conj(beta)) = 0.
  const double a = std::sqrt(0.8);
  EXPECT_THROW(
      dcqd_configurations(Complex(a * std::cos(M_PI / 4), a * std::sin(M_PI / 4))),
      ArgumentError);
  EXPECT_NO_THROW(dcqd_configurations(Complex(0.5, 0.0)));
}

TEST(DcqdPopulations, NamedChannelDiagonals) {
  const auto exact = SamplingMode::exact_mode();
  const Eigen::VectorXd id =
      dcqd_populations(named_channel(ChannelSpec::parse("identity")), exact);
  EXPECT_NEAR(id(0), 1.0, 1e-12);
  EXPECT_NEAR(id(1) + id(2) + id(3), 0.0, 1e-12);

  const Eigen::VectorXd bf =
      dcqd_populations(named_channel(ChannelSpec::parse("bit_flip(0.25)")), exact);
  EXPECT_NEAR(bf(0), 0.75, 1e-12);
  EXPECT_NEAR(bf(1), 0.25, 1e-12);

  const Eigen::VectorXd dep = dcqd_populations(
      named_channel(ChannelSpec::parse("depolarizing(0.3)")), exact);
  EXPECT_NEAR(dep(0), 0.7, 1e-12);
  for (int m = 1; m < 4; ++m) EXPECT_NEAR(dep(m), 0.1, 1e-12);
}

TEST(DcqdPopulations, PauliErrorsAreDetectedExactly) {
  // A definite Pauli error sigma_m maps the Bell pair onto Bell state m, so
  // the outcome distribution is a unit vector with no postprocessing.
  const char* specs[] = {"unitary(x,3.14159265358979323846)",
                         "unitary(y,3.14159265358979323846)",
                         "unitary(z,3.14159265358979323846)"};
  for (int m = 1; m <= 3; ++m) {
    const Eigen::VectorXd p =
        dcqd_populations(named_channel(ChannelSpec::parse(specs[m - 1])),
                         SamplingMode::exact_mode());
    for (int k = 0; k < 4; ++k) {
      EXPECT_NEAR(p(k), k == m ? 1.0 : 0.0, 1e-9) << "m=" << m << " k=" << k;
    }
  }
}

TEST(DcqdPopulations, FrequenciesPassThroughUninverted) {
  // The sampled population estimate must be the raw Bell histogram: same
  // stream, same frequencies, no transformation.
  const KrausChannel ch = named_channel(ChannelSpec::parse("depolarizing(0.3)"));
  const std::uint64_t shots = 4096, seed = 55;
  const Eigen::VectorXd p =
      dcqd_populations(ch, SamplingMode::sampled(shots, seed));

  const auto cfgs = dcqd_configurations(dcqd_default_alpha());
  const DensityOperator out = apply_channel(ch, cfgs[0].input_state, 2);
  RandomSource rng = RandomSource::derive(seed, 0);
  const OutcomeHistogram h = sample_outcomes(out, bell_observable(), shots, rng);
  const auto f = h.frequencies();
  for (int k = 0; k < 4; ++k) {
    EXPECT_EQ(p(k), f[static_cast<std::size_t>(k)]) << "outcome " << k;
  }
}

TEST(DcqdCoherences, StabilizerSectorSumIsExact) {
  // Amplitude damping gamma = 0.2 through the Z-coherence preparation: the
  // ZZ = +1 sector holds chi_00 + chi_33 + 2 chi_03 <Z^A> = 0.9 + 0.1 * 0.6.
  const KrausChannel ch =
      named_channel(ChannelSpec::parse("amplitude_damping(0.2)"));
  const DcqdReport r = dcqd_full(ch, SamplingMode::exact_mode());
  const double sector = r.bell_frequencies(1, 0) + r.bell_frequencies(1, 3);
  EXPECT_NEAR(sector, 0.96, 1e-12);
}

TEST(DcqdFull, ExactModeRecoversNamedChannels) {
  for (const char* spec :
       {"identity", "bit_flip(0.25)", "depolarizing(0.3)",
        "amplitude_damping(0.2)", "phase_damping(0.4)", "unitary(y,0.7)"}) {
    const KrausChannel ch = named_channel(ChannelSpec::parse(spec));
    const ChiMatrix truth = kraus_to_chi(ch);
    const DcqdReport r = dcqd_full(ch, SamplingMode::exact_mode());
    EXPECT_LT((r.chi.chi - truth.chi).norm(), 1e-8) << spec;
    EXPECT_EQ(r.config_count, 4);
  }
}

TEST(DcqdFull, ExactModeRecoversRandomChannels) {
  RandomSource rng(901);
  for (int i = 0; i < 25; ++i) {
    const KrausChannel ch = random_cptp_channel(1, rng);
    const ChiMatrix truth = kraus_to_chi(ch);
    const DcqdReport r = dcqd_full(ch, SamplingMode::exact_mode());
    EXPECT_LT((r.chi.chi - truth.chi).norm(), 1e-8) << "trial " << i;
    EXPECT_TRUE(is_hermitian(r.chi.chi, 1e-12));
  }
}

TEST(DcqdFull, RotationPhaseAppearsInOffDiagonal) {
  // exp(-i theta Z / 2): chi_03 = i sin(theta) / 2 against the I, Z pair.
  const double theta = 0.7;
  const KrausChannel ch =
      named_channel(ChannelSpec::parse("unitary(z,0.7)"));
  const DcqdReport r = dcqd_full(ch, SamplingMode::exact_mode());
  EXPECT_NEAR(r.chi.chi(0, 3).real(), 0.0, 1e-10);
  EXPECT_NEAR(r.chi.chi(0, 3).imag(), std::sin(theta) / 2.0, 1e-10);
  EXPECT_NEAR(r.chi.chi(0, 0).real(), std::cos(theta / 2.0) * std::cos(theta / 2.0),
              1e-10);
}

TEST(DcqdFull, ReportBookkeeping) {
  const KrausChannel ch = named_channel(ChannelSpec::parse("bit_flip(0.25)"));
  const DcqdReport r = dcqd_full(ch, SamplingMode::exact_mode());
  EXPECT_EQ(r.config_count, 4);
  EXPECT_EQ(r.inversion_depth, (std::array<int, 4>{0, 2, 2, 2}));
  ASSERT_EQ(r.bell_frequencies.rows(), 4);
  ASSERT_EQ(r.bell_frequencies.cols(), 4);
  // Row 0 is the population distribution and doubles as the chi diagonal.
  for (int m = 0; m < 4; ++m) {
    EXPECT_NEAR(r.bell_frequencies(0, m), r.chi.chi(m, m).real(), 1e-12);
    EXPECT_NEAR(r.bell_frequencies.row(m).sum(), 1.0, 1e-10);
  }
}

TEST(DcqdFull, SampledModeDeterministicAndConverges) {
  const KrausChannel ch =
      named_channel(ChannelSpec::parse("amplitude_damping(0.2)"));
  const ChiMatrix truth = kraus_to_chi(ch);
  const DcqdReport a = dcqd_full(ch, SamplingMode::sampled(50000, 63));
  const DcqdReport b = dcqd_full(ch, SamplingMode::sampled(50000, 63));
  EXPECT_TRUE(a.chi.chi == b.chi.chi);
  EXPECT_TRUE(a.bell_frequencies == b.bell_frequencies);
  EXPECT_LT((a.chi.chi - truth.chi).norm(), 0.1);
}

TEST(DcqdScope, SingleQubitOnly) {
  RandomSource rng(902);
  const KrausChannel ch = random_cptp_channel(2, rng);
  EXPECT_THROW(dcqd_populations(ch, SamplingMode::exact_mode()), ScopeError);
  EXPECT_THROW(dcqd_full(ch, SamplingMode::exact_mode()), ScopeError);
}

}  // namespace
}  // namespace qpt
