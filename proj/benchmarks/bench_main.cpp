#include <benchmark/benchmark.h>

#include "qpt/aapt_jsm.hpp"
#include "qpt/aapt_mub.hpp"
#include "qpt/aapt_povm.hpp"
#include "qpt/channel.hpp"
#include "qpt/dcqd.hpp"
#include "qpt/measurement.hpp"
#include "qpt/sqpt.hpp"
#include "qpt/stats.hpp"

namespace {

qpt::KrausChannel bench_channel(int n) {
  qpt::RandomSource rng(12345);
  return qpt::random_cptp_channel(n, rng);
}

void BM_kraus_to_chi_2q(benchmark::State& state) {
  const qpt::KrausChannel ch = bench_channel(2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qpt::kraus_to_chi(ch));
  }
}
BENCHMARK(BM_kraus_to_chi_2q);

void BM_sqpt_exact_1q(benchmark::State& state) {
  const qpt::KrausChannel ch = bench_channel(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qpt::sqpt_run(ch, qpt::SamplingMode::exact_mode()));
  }
}
BENCHMARK(BM_sqpt_exact_1q);

void BM_jsm_exact_1q(benchmark::State& state) {
  const qpt::KrausChannel ch = bench_channel(1);
  const qpt::DensityOperator bell = qpt::bell_input(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        qpt::jsm_run(ch, bell, qpt::SamplingMode::exact_mode()));
  }
}
BENCHMARK(BM_jsm_exact_1q);

void BM_mub_qpt_exact(benchmark::State& state) {
  const qpt::KrausChannel ch = bench_channel(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qpt::mub_qpt(ch, qpt::SamplingMode::exact_mode()));
  }
}
BENCHMARK(BM_mub_qpt_exact);

void BM_povm_qpt_exact(benchmark::State& state) {
  const qpt::KrausChannel ch = bench_channel(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qpt::povm_qpt(ch, qpt::SamplingMode::exact_mode()));
  }
}
BENCHMARK(BM_povm_qpt_exact);

void BM_dcqd_exact(benchmark::State& state) {
  const qpt::KrausChannel ch = bench_channel(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qpt::dcqd_full(ch, qpt::SamplingMode::exact_mode()));
  }
}
BENCHMARK(BM_dcqd_exact);

void BM_sample_outcomes_10k(benchmark::State& state) {
  const qpt::KrausChannel ch = bench_channel(1);
  const qpt::DensityOperator rho_e = qpt::choi_state(ch);
  const qpt::Observable bell = qpt::bell_observable();
  std::uint64_t seed = 0;
  for (auto _ : state) {
    qpt::RandomSource rng(++seed);
    benchmark::DoNotOptimize(qpt::sample_outcomes(rho_e, bell, 10000, rng));
  }
}
BENCHMARK(BM_sample_outcomes_10k);

void BM_quantum_chernoff_4x4(benchmark::State& state) {
  qpt::RandomSource rng(999);
  const qpt::Matrix rho =
      qpt::choi_state(qpt::random_cptp_channel(1, rng)).matrix;
  const qpt::Matrix sigma =
      qpt::choi_state(qpt::random_cptp_channel(1, rng)).matrix;
  for (auto _ : state) {
    benchmark::DoNotOptimize(qpt::quantum_chernoff_bound(rho, sigma));
  }
}
BENCHMARK(BM_quantum_chernoff_4x4);

}  // namespace

BENCHMARK_MAIN();
