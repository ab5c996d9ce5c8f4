#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qpt/channel.hpp"
#include "qpt/stats.hpp"

namespace qpt {

// One experiment: a channel, a scheme selection, a sampling mode and a
// seeded trial batch. Parsed from key = value text ('#' comments); unknown
// keys are rejected by name so config drift cannot pass silently.
struct ExperimentConfig {
  ChannelSpec channel;
  std::string scheme = "all";  // scheme token or "all"
  bool exact = true;
  std::uint64_t shots = 0;  // per configuration, sampled mode only
  std::uint64_t master_seed = 0;
  int trials = 1;
  std::string output_dir = ".";
  double alpha_sq = 0.8;            // DCQD coherence amplitude |alpha|^2
  std::string input_kind = "bell";  // JSM input state: "bell" | "werner"
  double werner_eps = 0.3;          // werner mixing weight

  void check() const;  // ValidationError naming the offending field
};

ExperimentConfig parse_experiment_config(const std::string& text);
ExperimentConfig load_experiment_config(const std::string& path);

struct TrialRow {
  Scheme scheme = Scheme::sqpt;
  int trial = 0;
  double frobenius = 0.0;
  double qcb = 1.0;
  std::uint64_t configs = 0;
  std::uint64_t shots = 0;  // 0 in exact mode
  std::uint64_t seed = 0;   // derived per-trial stream seed, 0 in exact mode
};

struct SchemeSummary {
  Scheme scheme = Scheme::sqpt;
  Matrix chi_est;  // estimate from the first trial
  double frobenius_mean = 0.0;
  double frobenius_std = 0.0;
  double qcb_mean = 1.0;
  std::uint64_t config_count = 0;
  std::uint64_t total_shots = 0;
  double wall_time_seconds = 0.0;  // measured, never serialized
};

struct ComparisonReport {
  ExperimentConfig config;
  std::string channel_label;
  int n = 1;
  ChiMatrix chi_true;
  std::vector<TrialRow> rows;  // ordered by (scheme, trial)
  std::vector<SchemeSummary> summaries;
};

// Schemes able to reconstruct an n-qubit channel: the dense linear systems
// bound sqpt and jsm to n <= 2, the rest are single-qubit schemes.
std::vector<Scheme> applicable_schemes(int n);

// Dispatches to the scheme modules. "all" resolves to applicable_schemes(n);
// an explicitly requested scheme outside that set raises ScopeError. The
// trial stream for scheme s, trial t is derived from the master seed at
// index (scheme enum value) * trials + t, so adding or removing schemes
// never shifts another scheme's draws.
ComparisonReport run_experiment(const ExperimentConfig& cfg);

// Writes report.<format> (format: csv | json | md) into cfg.output_dir, or
// $QPT_OUTPUT_DIR when set; returns the written paths. Identical reports
// serialize byte-identically; wall time is deliberately omitted.
std::vector<std::string> emit_report(const ComparisonReport& r,
                                     const std::string& format);

}  // namespace qpt
