// End-to-end acceptance checks for the tomography toolkit. Each check prints
// exactly one [PASS]/[FAIL] line; the exit code is the number of failures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qpt/aapt_jsm.hpp"
#include "qpt/aapt_mub.hpp"
#include "qpt/aapt_povm.hpp"
#include "qpt/channel.hpp"
#include "qpt/common.hpp"
#include "qpt/dcqd.hpp"
#include "qpt/experiment.hpp"
#include "qpt/measurement.hpp"
#include "qpt/pauli.hpp"
#include "qpt/sqpt.hpp"
#include "qpt/stats.hpp"
#include "test_util.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Check {
  std::string label;
  std::function<bool(std::string&)> run;
};

qpt::KrausChannel channel(const std::string& spec) {
  return qpt::named_channel(qpt::ChannelSpec::parse(spec));
}

double fitted_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// --- 1: CLI resource table ---------------------------------------------

std::string expected_resource_csv(int n) {
  const std::uint64_t p2 = std::uint64_t{1} << n;
  const std::uint64_t p4 = std::uint64_t{1} << (2 * n);
  const std::uint64_t p16 = p4 * p4;
  std::ostringstream s;
  s << "scheme,hilbert_dim,n_inputs,n_meas_per_input,n_exp,"
       "gates_per_meas,overall,nu_k,nu_special\n";
  s << "sqpt," << p2 << "," << p4 << "," << p4 << "," << p16
    << ",O(n),O(n 16^n),1,0\n";
  s << "jsm," << p4 << ",1," << p16 << "," << p16 << ",O(n),O(n 16^n),1,0\n";
  s << "mub," << p4 << ",1," << (p4 + 1) << "," << (p4 + 1)
    << ",O(n^2),O(n^2 4^n)," << (p4 - 1) << "," << p4 << "\n";
  s << "povm," << p16 << ",1,1,1,O(4^(2n)),O(4^(2n))," << p16 << ",0\n";
  s << "dcqd," << p4 << "," << p4 << ",1," << p4 << ",O(n),O(n 4^n)," << p4
    << ",0\n";
  return s.str();
}

bool check_resource_table(std::string& detail) {
  const auto t0 = Clock::now();
  for (int n = 1; n <= 4; ++n) {
    const qpt::test::CliResult r = qpt::test::run_cli(
        "resources table --n " + std::to_string(n) + " --format csv");
    if (r.exit_code != 0) {
      detail = "CLI exited " + std::to_string(r.exit_code) + " at n = " +
               std::to_string(n);
      return false;
    }
    if (r.out != expected_resource_csv(n)) {
      detail = "table mismatch at n = " + std::to_string(n);
      return false;
    }
  }
  const double dt = seconds_since(t0);
  detail = "n = 1..4 exact, " + std::to_string(dt) + " s";
  return dt < 1.0;
}

// --- 2: exact-mode scheme agreement -------------------------------------

bool check_exact_agreement(std::string& detail) {
  const auto t0 = Clock::now();
  std::vector<qpt::KrausChannel> channels;
  for (const char* spec :
       {"identity", "bit_flip(0.25)", "depolarizing(0.3)",
        "amplitude_damping(0.2)", "phase_damping(0.4)", "unitary(x,0.9)",
        "unitary(y,2.1)", "unitary(z,0.7)"}) {
    channels.push_back(channel(spec));
  }
  qpt::RandomSource rng(924);
  for (int i = 0; i < 25; ++i) {
    channels.push_back(qpt::random_cptp_channel(1, rng));
  }

  const auto exact = qpt::SamplingMode::exact_mode();
  const qpt::DensityOperator bell = qpt::bell_input(1);
  double worst = 0.0;
  for (const auto& ch : channels) {
    const qpt::Matrix truth = qpt::kraus_to_chi(ch).chi;
    const qpt::Matrix estimates[] = {
        qpt::sqpt_run(ch, exact).chi.chi,
        qpt::jsm_run(ch, bell, exact).chi.chi,
        qpt::mub_qpt(ch, exact).chi.chi,
        qpt::povm_qpt(ch, exact).chi.chi,
        qpt::dcqd_full(ch, exact).chi.chi,
    };
    for (const auto& est : estimates) {
      worst = std::max(worst, (est - truth).norm());
    }
  }
  const double dt = seconds_since(t0);
  detail = "33 channels x 5 schemes, worst Frobenius " + std::to_string(worst) +
           ", " + std::to_string(dt) + " s";
  return worst < 1e-7 && dt < 30.0;
}

// --- 3: direct population readout ----------------------------------------

bool check_direct_readout(std::string& detail) {
  // Sampled populations must be the raw Bell-outcome frequencies, bit for
  // bit: same derived stream, no postprocessing.
  const qpt::KrausChannel noisy = channel("depolarizing(0.3)");
  const std::uint64_t shots = 8192, seed = 2026;
  const Eigen::VectorXd direct =
      qpt::dcqd_populations(noisy, qpt::SamplingMode::sampled(shots, seed));
  const auto cfgs = qpt::dcqd_configurations(qpt::dcqd_default_alpha());
  const qpt::DensityOperator out =
      qpt::apply_channel(noisy, cfgs[0].input_state, 2);
  qpt::RandomSource rng = qpt::RandomSource::derive(seed, 0);
  const auto freqs =
      qpt::sample_outcomes(out, qpt::bell_observable(), shots, rng).frequencies();
  for (int m = 0; m < 4; ++m) {
    if (direct(m) != freqs[static_cast<std::size_t>(m)]) {
      detail = "sampled populations are not the raw frequencies";
      return false;
    }
  }

  const Eigen::VectorXd bf =
      qpt::dcqd_populations(channel("bit_flip(0.25)"), qpt::SamplingMode::exact_mode());
  if (std::abs(bf(0) - 0.75) > 1e-12 || std::abs(bf(1) - 0.25) > 1e-12 ||
      std::abs(bf(2)) > 1e-12 || std::abs(bf(3)) > 1e-12) {
    detail = "exact populations are not the chi diagonal";
    return false;
  }

  const qpt::DcqdReport rep =
      qpt::dcqd_full(channel("amplitude_damping(0.2)"), qpt::SamplingMode::exact_mode());
  const double sector = rep.bell_frequencies(1, 0) + rep.bell_frequencies(1, 3);
  if (std::abs(sector - 0.96) > 1e-9) {
    detail = "stabilizer sector value " + std::to_string(sector);
    return false;
  }
  if (rep.inversion_depth != std::array<int, 4>{0, 2, 2, 2}) {
    detail = "unexpected inversion depths";
    return false;
  }
  detail = "frequencies verbatim; sector value 0.96";
  return true;
}

// --- 4: unbiased-bases families ------------------------------------------

bool check_mub_families(std::string& detail) {
  for (int m = 1; m <= 3; ++m) {
    const qpt::MubFamily fam = qpt::mub_construct(m);
    const double invd = 1.0 / static_cast<double>(fam.d);
    for (std::size_t k = 0; k < fam.bases.size(); ++k) {
      for (std::size_t l = k + 1; l < fam.bases.size(); ++l) {
        for (Eigen::Index i = 0; i < fam.d; ++i) {
          for (Eigen::Index j = 0; j < fam.d; ++j) {
            const qpt::Complex ip =
                fam.bases[k].col(i).dot(fam.bases[l].col(j));
            if (std::abs(std::norm(ip) - invd) > 1e-10) {
              detail = "overlap off at m = " + std::to_string(m);
              return false;
            }
          }
        }
      }
    }
  }

  const qpt::MubFamily fam2 = qpt::mub_construct(2);
  const std::vector<std::vector<std::uint64_t>> expected{
      {3, 12, 15}, {1, 4, 5}, {2, 8, 10}, {7, 9, 14}, {6, 11, 13}};
  for (std::size_t k = 0; k < expected.size(); ++k) {
    std::vector<std::uint64_t> got = fam2.pauli_classes[k];
    std::sort(got.begin(), got.end());
    if (got != expected[k]) {
      detail = "two-qubit partition differs in class " + std::to_string(k + 1);
      return false;
    }
  }

  const qpt::MubFamily fam1 = qpt::mub_construct(1);
  qpt::RandomSource rng(777);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const qpt::Matrix rho = qpt::test::random_density(2, rng);
    const qpt::Matrix est = qpt::mub_state_tomography(
        qpt::DensityOperator{qpt::Matrix(rho)}, fam1,
        qpt::SamplingMode::exact_mode());
    worst = std::max(worst, (est - rho).norm());
  }
  detail = "overlaps, partition, 100-state recovery (worst " +
           std::to_string(worst) + ")";
  return worst < 1e-9;
}

// --- 5: faithful-input gate ----------------------------------------------

bool check_faithfulness_gate(std::string& detail) {
  qpt::Matrix zero = qpt::Matrix::Zero(2, 2);
  zero(0, 0) = 1.0;
  const qpt::DensityOperator product{qpt::tensor_product(zero, zero)};
  bool rejected = false;
  try {
    qpt::jsm_run(channel("identity"), product, qpt::SamplingMode::exact_mode());
  } catch (const qpt::ValidationError&) {
    rejected = true;
  }
  if (!rejected) {
    detail = "product input was not rejected";
    return false;
  }

  const qpt::DensityOperator w = qpt::werner_input(0.3);
  const qpt::FaithfulInput in = qpt::faithfulness_check(w, 1);
  if (!in.faithful || in.schmidt_number != 4) {
    detail = "mixed faithful input misclassified";
    return false;
  }
  if (std::abs(in.purity - 0.3175) > 1e-9) {
    detail = "purity " + std::to_string(in.purity);
    return false;
  }
  const qpt::KrausChannel ch = channel("amplitude_damping(0.2)");
  const double err = (qpt::jsm_run(ch, w, qpt::SamplingMode::exact_mode()).chi.chi -
                      qpt::kraus_to_chi(ch).chi)
                         .norm();
  detail = "product input rejected; mixed input works (error " +
           std::to_string(err) + ", purity 0.3175)";
  return err < 1e-9;
}

// --- 6: sample-count rule ------------------------------------------------

bool check_sample_rule(std::string& detail) {
  const auto t0 = Clock::now();
  {
    qpt::ChernoffQuery q;
    q.p = 0.5;
    q.delta = 0.1;
    q.eps = 0.05;
    if (qpt::required_samples(q) != 1798) {
      detail = "direct sample count off";
      return false;
    }
  }

  const double delta = 0.2, eps = 0.1;
  const std::pair<std::uint64_t, std::uint64_t> table[] = {
      {2, 346}, {4, 691}, {16, 2764}};
  double worst_freq = 0.0;
  for (const auto& [nu, expected_n] : table) {
    qpt::ChernoffQuery q;
    q.nu = nu;
    q.delta = delta;
    q.eps = eps;
    const std::uint64_t n = qpt::required_samples(q);
    if (n != expected_n) {
      detail = "sample count for nu = " + std::to_string(nu) + " is " +
               std::to_string(n);
      return false;
    }
    const double p = 1.0 / static_cast<double>(nu);
    const std::vector<double> probs(nu, p);
    const int trials = 500;
    int bad = 0;
    for (int t = 0; t < trials; ++t) {
      qpt::RandomSource rng = qpt::RandomSource::derive(77000 + nu, t);
      const auto counts = qpt::multinomial_sample(probs, n, rng);
      const double f0 =
          static_cast<double>(counts[0]) / static_cast<double>(n);
      if (std::abs(f0 - p) > delta * p) ++bad;
    }
    const double freq = static_cast<double>(bad) / trials;
    worst_freq = std::max(worst_freq, freq);
    if (freq > 0.13) {
      detail = "failure frequency " + std::to_string(freq) + " at nu = " +
               std::to_string(nu);
      return false;
    }
  }
  const double dt = seconds_since(t0);
  detail = "counts {346, 691, 2764}; worst observed failure rate " +
           std::to_string(worst_freq) + ", " + std::to_string(dt) + " s";
  return dt < 60.0;
}

// --- 7: ensemble-error scaling -------------------------------------------

bool check_error_scaling(std::string& detail) {
  const qpt::KrausChannel ch = channel("amplitude_damping(0.2)");
  const qpt::Matrix truth = qpt::kraus_to_chi(ch).chi;
  const qpt::DensityOperator bell = qpt::bell_input(1);

  struct SchemeProbe {
    const char* name;
    std::function<qpt::Matrix(std::uint64_t, std::uint64_t)> estimate;
  };
  const SchemeProbe probes[] = {
      {"sqpt",
       [&](std::uint64_t shots, std::uint64_t seed) {
         return qpt::sqpt_run(ch, qpt::SamplingMode::sampled(shots, seed)).chi.chi;
       }},
      {"jsm",
       [&](std::uint64_t shots, std::uint64_t seed) {
         return qpt::jsm_run(ch, bell, qpt::SamplingMode::sampled(shots, seed))
             .chi.chi;
       }},
      {"dcqd",
       [&](std::uint64_t shots, std::uint64_t seed) {
         return qpt::dcqd_full(ch, qpt::SamplingMode::sampled(shots, seed)).chi.chi;
       }},
  };

  const std::uint64_t tiers[] = {100, 1000, 10000, 100000};
  const int seeds_per_tier = 50;
  std::string slopes;
  for (const auto& probe : probes) {
    std::vector<double> log_n, log_err;
    for (std::size_t tier = 0; tier < 4; ++tier) {
      double total = 0.0;
      for (int t = 0; t < seeds_per_tier; ++t) {
        const std::uint64_t seed =
            qpt::RandomSource::derive_seed(31000 + tier, static_cast<std::uint64_t>(t));
        total += (probe.estimate(tiers[tier], seed) - truth).norm();
      }
      log_n.push_back(std::log10(static_cast<double>(tiers[tier])));
      log_err.push_back(std::log10(total / seeds_per_tier));
    }
    const double slope = fitted_slope(log_n, log_err);
    slopes += std::string(probe.name) + " " + std::to_string(slope) + "  ";
    if (std::abs(slope + 0.5) > 0.15) {
      detail = std::string("slope for ") + probe.name + " is " +
               std::to_string(slope);
      return false;
    }
  }
  detail = "log-log slopes: " + slopes;
  return true;
}

// --- 8: distinguishability bound ------------------------------------------

bool check_qcb_values(std::string& detail) {
  qpt::Matrix zero = qpt::Matrix::Zero(2, 2);
  zero(0, 0) = 1.0;
  qpt::Matrix one = qpt::Matrix::Zero(2, 2);
  one(1, 1) = 1.0;
  const qpt::Matrix mixed = qpt::Matrix::Identity(2, 2) / 2.0;

  qpt::RandomSource rng(881);
  const qpt::Matrix rho = qpt::test::random_density(4, rng);
  const qpt::Matrix sigma = qpt::test::random_density(4, rng);

  const double same = qpt::quantum_chernoff_bound(rho, rho).value;
  const double orth = qpt::quantum_chernoff_bound(zero, one).value;
  const double half = qpt::quantum_chernoff_bound(zero, mixed).value;
  const double ab = qpt::quantum_chernoff_bound(rho, sigma).value;
  const double ba = qpt::quantum_chernoff_bound(sigma, rho).value;

  if (std::abs(same - 1.0) > 1e-9) {
    detail = "identical states give " + std::to_string(same);
    return false;
  }
  if (std::abs(orth) > 1e-9) {
    detail = "orthogonal states give " + std::to_string(orth);
    return false;
  }
  if (std::abs(half - 0.5) > 1e-6) {
    detail = "pure-vs-maximally-mixed gives " + std::to_string(half);
    return false;
  }
  if (std::abs(ab - ba) > 1e-8) {
    detail = "asymmetry " + std::to_string(std::abs(ab - ba));
    return false;
  }
  detail = "1 / 0 / 0.5 / symmetric";
  return true;
}

// --- 9: input-state comparison at fixed shots ------------------------------

bool check_input_comparison(std::string& detail) {
  const qpt::KrausChannel ch = channel("amplitude_damping(0.2)");
  const qpt::Matrix truth = qpt::kraus_to_chi(ch).chi;
  const qpt::DensityOperator bell = qpt::bell_input(1);
  const qpt::DensityOperator werner = qpt::werner_input(0.3);
  const std::uint64_t shots = 10000;
  double bell_total = 0.0, werner_total = 0.0;
  const int seeds = 100;
  for (int t = 0; t < seeds; ++t) {
    const std::uint64_t seed =
        qpt::RandomSource::derive_seed(45000, static_cast<std::uint64_t>(t));
    bell_total +=
        (qpt::jsm_run(ch, bell, qpt::SamplingMode::sampled(shots, seed)).chi.chi -
         truth)
            .norm();
    werner_total +=
        (qpt::jsm_run(ch, werner, qpt::SamplingMode::sampled(shots, seed)).chi.chi -
         truth)
            .norm();
  }
  const double bell_mean = bell_total / seeds;
  const double werner_mean = werner_total / seeds;
  detail = "mean error " + std::to_string(bell_mean) + " (entangled) vs " +
           std::to_string(werner_mean) + " (mixed)";
  return bell_mean <= werner_mean;
}

// --- 10: byte-identical reruns ---------------------------------------------

bool check_reproducible_reports(std::string& detail) {
  qpt::ExperimentConfig cfg;
  cfg.channel = qpt::ChannelSpec::parse("depolarizing(0.3)");
  cfg.exact = false;
  cfg.shots = 1000;
  cfg.master_seed = 5;
  cfg.trials = 2;

  cfg.output_dir = qpt::test::fresh_temp_dir("accept_rep_a").string();
  const qpt::ComparisonReport r1 = qpt::run_experiment(cfg);
  const auto csv1 = qpt::emit_report(r1, "csv");
  const auto json1 = qpt::emit_report(r1, "json");

  cfg.output_dir = qpt::test::fresh_temp_dir("accept_rep_b").string();
  const qpt::ComparisonReport r2 = qpt::run_experiment(cfg);
  const auto csv2 = qpt::emit_report(r2, "csv");
  const auto json2 = qpt::emit_report(r2, "json");

  const std::string a_csv = qpt::test::read_file(csv1.at(0));
  const std::string b_csv = qpt::test::read_file(csv2.at(0));
  const std::string a_json = qpt::test::read_file(json1.at(0));
  const std::string b_json = qpt::test::read_file(json2.at(0));
  if (a_csv.empty() || a_csv != b_csv) {
    detail = "CSV outputs differ between reruns";
    return false;
  }
  if (a_json.empty() || a_json != b_json) {
    detail = "JSON outputs differ between reruns";
    return false;
  }
  detail = "CSV and JSON byte-identical across reruns";
  return true;
}

}  // namespace

int main() {
  const std::vector<Check> checks = {
      {"per-scheme resource counts via the CLI (n = 1..4)", check_resource_table},
      {"exact-mode agreement of all five schemes", check_exact_agreement},
      {"direct population readout without inversion", check_direct_readout},
      {"unbiased-bases families and state recovery", check_mub_families},
      {"faithful-input gate for joint-readout tomography", check_faithfulness_gate},
      {"sample-count rule meets its failure budget", check_sample_rule},
      {"ensemble-error scaling near N^(-1/2)", check_error_scaling},
      {"distinguishability bound pinned values", check_qcb_values},
      {"entangled input beats mixed input at fixed shots", check_input_comparison},
      {"byte-identical reruns of the comparison pipeline", check_reproducible_reports},
  };

  int failures = 0;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    std::string detail;
    bool ok = false;
    try {
      ok = checks[i].run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
      ok = false;
    }
    std::printf("[%s] %2zu %s%s%s\n", ok ? "PASS" : "FAIL", i + 1,
                checks[i].label.c_str(), detail.empty() ? "" : " -- ",
                detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
  return failures;
}
