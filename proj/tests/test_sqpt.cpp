#include "qpt/sqpt.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "qpt/common.hpp"
#include "qpt/pauli.hpp"
#include "test_util.hpp"

namespace qpt {
namespace {

// Matrix unit |a><b| addressed by per-qubit base-4 digits 2a+b, qubit 0 most
// significant. Independent of the library's combo-matrix construction.
Matrix matrix_unit(int n, Eigen::Index l) {
  const Eigen::Index d = Eigen::Index{1} << n;
  Eigen::Index row = 0, col = 0;
  std::vector<int> digits(n);
  Eigen::Index rem = l;
  for (int q = n - 1; q >= 0; --q) {
    digits[q] = static_cast<int>(rem % 4);
    rem /= 4;
  }
  for (int q = 0; q < n; ++q) {
    row = row * 2 + digits[q] / 2;
    col = col * 2 + digits[q] % 2;
  }
  Matrix unit = Matrix::Zero(d, d);
  unit(row, col) = 1.0;
  return unit;
}

TEST(SqptPlan, PhysicalCombinationsReproduceMatrixUnits) {
  for (int n = 1; n <= 2; ++n) {
    const SqptPlan plan = sqpt_inputs(n);
    const Eigen::Index p4 = Eigen::Index{1} << (2 * n);
    ASSERT_EQ(plan.inputs.size(), static_cast<std::size_t>(p4));
    ASSERT_EQ(plan.combo.rows(), p4);
    ASSERT_EQ(plan.combo.cols(), p4);
    for (Eigen::Index l = 0; l < p4; ++l) {
      Matrix lhs = Matrix::Zero(plan.inputs[0].matrix.rows(),
                                plan.inputs[0].matrix.cols());
      for (Eigen::Index j = 0; j < p4; ++j) {
        lhs += plan.combo(l, j) * plan.inputs[j].matrix;
      }
      EXPECT_LT((lhs - matrix_unit(n, l)).norm(), 1e-12) << "n=" << n
                                                         << " l=" << l;
    }
  }
}

TEST(SqptPlan, InputsAreStates) {
  const SqptPlan plan = sqpt_inputs(2);
  for (const auto& rho : plan.inputs) {
    EXPECT_NEAR(rho.matrix.trace().real(), 1.0, 1e-12);
    EXPECT_TRUE(is_hermitian(rho.matrix, 1e-12));
  }
  EXPECT_EQ(plan.config_count(), 256u);
  EXPECT_EQ(sqpt_inputs(1).config_count(), 16u);
}

TEST(SqptBMatrix, EntriesMatchBruteForceTraces) {
  const int n = 1;
  const Matrix b = sqpt_b_matrix(n);
  const auto basis = pauli_basis(n);
  ASSERT_EQ(b.rows(), 16);
  ASSERT_EQ(b.cols(), 16);
  for (Eigen::Index k = 0; k < 4; ++k) {
    for (Eigen::Index l = 0; l < 4; ++l) {
      for (Eigen::Index m = 0; m < 4; ++m) {
        for (Eigen::Index nn = 0; nn < 4; ++nn) {
          const Complex expect =
              (basis[k] * basis[m] * matrix_unit(n, l) * basis[nn].adjoint())
                  .trace();
          EXPECT_LT(std::abs(b(k * 4 + l, m * 4 + nn) - expect), 1e-12)
              << k << "," << l << "," << m << "," << nn;
        }
      }
    }
  }
}

TEST(SqptMeasure, ExactLambdaMatchesDefinition) {
  RandomSource rng(501);
  const int n = 1;
  const SqptPlan plan = sqpt_inputs(n);
  const KrausChannel ch = random_cptp_channel(n, rng);
  const auto lambda = sqpt_measure(plan, ch, SamplingMode::exact_mode());
  const auto basis = pauli_basis(n);
  ASSERT_EQ(lambda.size(), 16u);
  for (Eigen::Index k = 0; k < 4; ++k) {
    for (Eigen::Index l = 0; l < 4; ++l) {
      // lambda_kl = Tr(E_k E(rho_l)) with rho_l the matrix unit.
      Matrix out = Matrix::Zero(2, 2);
      for (const auto& a : ch.operators) {
        out += a * matrix_unit(n, l) * a.adjoint();
      }
      const Complex expect = (basis[k] * out).trace();
      EXPECT_LT(std::abs(lambda[k * 4 + l] - expect), 1e-10);
    }
  }
}

TEST(SqptRun, ExactModeRecoversRandomChannels) {
  RandomSource rng(502);
  for (int i = 0; i < 25; ++i) {
    const KrausChannel ch = random_cptp_channel(1, rng);
    const ChiMatrix truth = kraus_to_chi(ch);
    const SqptResult r = sqpt_run(ch, SamplingMode::exact_mode());
    EXPECT_LT((r.chi.chi - truth.chi).norm(), 1e-9) << "trial " << i;
    EXPECT_LT(r.residual, 1e-9);
    EXPECT_EQ(r.config_count, 16u);
  }
}

TEST(SqptRun, ExactModeRecoversNamedChannels) {
  for (const char* spec :
       {"identity", "bit_flip(0.25)", "depolarizing(0.3)",
        "amplitude_damping(0.2)", "phase_damping(0.4)", "unitary(y,0.7)"}) {
    const KrausChannel ch = named_channel(ChannelSpec::parse(spec));
    const ChiMatrix truth = kraus_to_chi(ch);
    const SqptResult r = sqpt_run(ch, SamplingMode::exact_mode());
    EXPECT_LT((r.chi.chi - truth.chi).norm(), 1e-9) << spec;
  }
}

TEST(SqptRun, ExactModeRecoversTwoQubitChannel) {
  RandomSource rng(503);
  const KrausChannel ch = random_cptp_channel(2, rng);
  const ChiMatrix truth = kraus_to_chi(ch);
  const SqptResult r = sqpt_run(ch, SamplingMode::exact_mode());
  EXPECT_LT((r.chi.chi - truth.chi).norm(), 1e-8);
  EXPECT_EQ(r.config_count, 256u);
}

TEST(SqptRun, SampledModeIsDeterministicAndConverges) {
  const KrausChannel ch = named_channel(ChannelSpec::parse("amplitude_damping(0.2)"));
  const ChiMatrix truth = kraus_to_chi(ch);
  const SqptResult a = sqpt_run(ch, SamplingMode::sampled(20000, 77));
  const SqptResult b = sqpt_run(ch, SamplingMode::sampled(20000, 77));
  EXPECT_TRUE(a.chi.chi == b.chi.chi);
  EXPECT_LT((a.chi.chi - truth.chi).norm(), 0.1);
  const SqptResult c = sqpt_run(ch, SamplingMode::sampled(20000, 78));
  EXPECT_FALSE(a.chi.chi == c.chi.chi);
}

TEST(SqptRun, PsdClipFlagsAndRepairsEstimate) {
  const KrausChannel ch = named_channel(ChannelSpec::parse("depolarizing(0.05)"));
  // Small ensembles routinely produce indefinite linear-inversion estimates.
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const SqptResult raw = sqpt_run(ch, SamplingMode::sampled(100, seed));
    if (raw.min_chi_eigenvalue >= 0.0) continue;
    const SqptResult fixed = sqpt_run(ch, SamplingMode::sampled(100, seed), true);
    EXPECT_TRUE(fixed.clipped);
    // min_chi_eigenvalue stays the pre-repair diagnostic; the returned
    // matrix itself must be PSD with the original trace.
    EXPECT_LT(fixed.min_chi_eigenvalue, 0.0);
    Eigen::SelfAdjointEigenSolver<Matrix> es(fixed.chi.chi);
    EXPECT_GE(es.eigenvalues().minCoeff(), -1e-10);
    EXPECT_NEAR(fixed.chi.chi.trace().real(), raw.chi.chi.trace().real(), 1e-9);
    return;
  }
  FAIL() << "no indefinite estimate found to exercise the clip path";
}

TEST(SqptScope, ReconstructionCapsAtTwoQubits) {
  EXPECT_THROW(sqpt_b_matrix(3), SizeError);
  EXPECT_THROW(sqpt_inputs(4), SizeError);
  EXPECT_THROW(sqpt_reconstruct(std::vector<Complex>(4096, Complex{0.0}), 3),
               SizeError);
}

}  // namespace
}  // namespace qpt
