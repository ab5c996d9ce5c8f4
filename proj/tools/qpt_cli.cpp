#include <cmath>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qpt/aapt_mub.hpp"
#include "qpt/channel.hpp"
#include "qpt/dcqd.hpp"
#include "qpt/experiment.hpp"
#include "qpt/stats.hpp"

namespace {

void print_resource_table(int n, const std::string& format) {
  const auto rows = qpt::resource_table(n);
  if (format == "csv") {
    std::cout << "scheme,hilbert_dim,n_inputs,n_meas_per_input,n_exp,"
                 "gates_per_meas,overall,nu_k,nu_special\n";
    for (const auto& r : rows) {
      std::cout << qpt::scheme_token(r.scheme) << "," << r.hilbert_dim << ","
                << r.n_inputs << "," << r.n_meas_per_input << "," << r.n_exp
                << "," << r.gates_per_meas << "," << r.overall << "," << r.nu_k
                << "," << r.nu_special << "\n";
    }
    return;
  }
  std::cout << "| Scheme | dim(H) | Inputs | Meas./input | Configs | "
               "Gates/meas | Overall | nu_k |\n";
  std::cout << "|---|---|---|---|---|---|---|---|\n";
  for (const auto& r : rows) {
    std::string gates = r.gates_per_meas;
    if (!r.gates_per_meas_nn.empty()) {
      gates += " [" + r.gates_per_meas_nn + " nn]";
    }
    std::string overall = r.overall;
    if (!r.overall_nn.empty()) overall += " [" + r.overall_nn + " nn]";
    std::string nu = std::to_string(r.nu_k);
    if (r.nu_special != 0) {
      nu += " (one setting: " + std::to_string(r.nu_special) + ")";
    }
    std::cout << "| " << qpt::scheme_display_name(r.scheme) << " | "
              << r.hilbert_dim << " | " << r.n_inputs << " | "
              << r.n_meas_per_input << " | " << r.n_exp << " | " << gates
              << " | " << overall << " | " << nu << " |\n";
  }
}

void print_matrix(const qpt::Matrix& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const qpt::Complex v = m(r, c);
      std::cout << (c == 0 ? "" : "  ") << qpt::format_double(v.real())
                << (v.imag() < 0 ? "-" : "+")
                << qpt::format_double(std::abs(v.imag())) << "i";
    }
    std::cout << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum process tomography toolkit"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "Run a tomography experiment");
  std::string cfg_path, channel_arg, scheme_arg, mode_arg, outdir_arg;
  std::uint64_t shots_arg = 0, seed_arg = 0;
  int trials_arg = 0;
  std::vector<std::string> formats{"csv", "json", "md"};
  run->add_option("--config", cfg_path, "key = value experiment config file");
  run->add_option("--channel", channel_arg,
                  "channel spec, e.g. amplitude_damping(0.2)");
  run->add_option("--scheme", scheme_arg, "sqpt|jsm|mub|povm|dcqd|all");
  run->add_option("--mode", mode_arg, "exact|sampled");
  run->add_option("--shots", shots_arg, "shots per configuration");
  run->add_option("--seed", seed_arg, "master seed");
  run->add_option("--trials", trials_arg, "trial count");
  run->add_option("--output-dir", outdir_arg, "report directory");
  run->add_option("--format", formats, "report formats (csv json md)");

  // resources table
  auto* resources = app.add_subcommand("resources", "Resource accounting");
  auto* table = resources->add_subcommand("table", "Per-scheme counts");
  int table_n = 1;
  std::string table_format = "md";
  table->add_option("--n", table_n, "qubit count")->required();
  table->add_option("--format", table_format, "md|csv");

  // chernoff
  auto* chernoff = app.add_subcommand(
      "chernoff", "Sample count for the good-statistics condition");
  double ch_p = 0.0, ch_delta = 0.0, ch_eps = 0.0;
  std::uint64_t ch_nu = 0;
  chernoff->add_option("--p", ch_p, "true outcome probability");
  chernoff->add_option("--delta", ch_delta, "relative error")->required();
  chernoff->add_option("--eps", ch_eps, "failure probability")->required();
  chernoff->add_option("--nu", ch_nu, "outcome-space size (uniform form)");

  // mub dump
  auto* mub = app.add_subcommand("mub", "Unbiased-bases utilities");
  auto* dump = mub->add_subcommand("dump", "Print the operator partition");
  int mub_m = 2;
  dump->add_option("--m", mub_m, "total qubit count of the joint system")
      ->required();

  // dcqd run
  auto* dcqd_cmd = app.add_subcommand("dcqd", "Direct characterization");
  auto* dcqd_run = dcqd_cmd->add_subcommand("run", "Run the four-config scheme");
  std::string dcqd_channel;
  std::uint64_t dcqd_shots = 0, dcqd_seed = 0;
  double dcqd_alpha_sq = 0.8;
  dcqd_run->add_option("--channel", dcqd_channel, "channel spec")->required();
  dcqd_run->add_option("--shots", dcqd_shots, "shots per config (0 = exact)");
  dcqd_run->add_option("--seed", dcqd_seed, "master seed");
  dcqd_run->add_option("--alpha-sq", dcqd_alpha_sq, "|alpha|^2 for coherence inputs");

  // validate-channel
  auto* validate = app.add_subcommand("validate-channel",
                                      "Check CP and TP of a channel");
  std::string val_channel;
  validate->add_option("--channel", val_channel, "channel spec")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (run->parsed()) {
      qpt::ExperimentConfig cfg;
      if (!cfg_path.empty()) cfg = qpt::load_experiment_config(cfg_path);
      if (!channel_arg.empty()) {
        cfg.channel = qpt::ChannelSpec::parse(channel_arg);
      }
      if (!scheme_arg.empty()) cfg.scheme = scheme_arg;
      if (!mode_arg.empty()) {
        if (mode_arg == "exact") {
          cfg.exact = true;
        } else if (mode_arg == "sampled") {
          cfg.exact = false;
        } else {
          throw qpt::ValidationError("config field mode: expected exact or "
                                     "sampled");
        }
      }
      if (run->count("--shots") > 0) cfg.shots = shots_arg;
      if (run->count("--seed") > 0) cfg.master_seed = seed_arg;
      if (run->count("--trials") > 0) cfg.trials = trials_arg;
      if (!outdir_arg.empty()) cfg.output_dir = outdir_arg;

      const auto report = qpt::run_experiment(cfg);
      for (const auto& f : formats) {
        for (const auto& p : qpt::emit_report(report, f)) {
          std::cout << "wrote " << p << "\n";
        }
      }
      for (const auto& s : report.summaries) {
        std::cout << qpt::scheme_display_name(s.scheme)
                  << ": frobenius_mean = "
                  << qpt::format_double(s.frobenius_mean)
                  << ", qcb_mean = " << qpt::format_double(s.qcb_mean)
                  << ", configs = " << s.config_count << "\n";
      }
    } else if (table->parsed()) {
      print_resource_table(table_n, table_format);
    } else if (chernoff->parsed()) {
      qpt::ChernoffQuery q;
      q.p = ch_p;
      q.delta = ch_delta;
      q.eps = ch_eps;
      q.nu = ch_nu;
      std::cout << qpt::required_samples(q) << "\n";
      if (ch_nu > 0) {
        std::cout << "# uniform assumption: p = 1/" << ch_nu << "\n";
      }
    } else if (dump->parsed()) {
      std::cout << qpt::mub_dump(mub_m);
    } else if (dcqd_run->parsed()) {
      const auto spec = qpt::ChannelSpec::parse(dcqd_channel);
      const qpt::KrausChannel ch =
          spec.kind == qpt::ChannelSpec::Kind::kraus_file
              ? qpt::load_channel_file(spec.path)
              : qpt::named_channel(spec);
      const auto mode = dcqd_shots == 0
                            ? qpt::SamplingMode::exact_mode()
                            : qpt::SamplingMode::sampled(dcqd_shots, dcqd_seed);
      const auto rep = qpt::dcqd_full(
          ch, mode, qpt::Complex(std::sqrt(dcqd_alpha_sq), 0.0));
      std::cout << "configs: " << rep.config_count << "\n";
      std::cout << "populations:";
      for (int m = 0; m < 4; ++m) {
        std::cout << " " << qpt::format_double(rep.bell_frequencies(0, m));
      }
      std::cout << "\nchi:\n";
      print_matrix(rep.chi.chi);
    } else if (validate->parsed()) {
      const auto spec = qpt::ChannelSpec::parse(val_channel);
      const qpt::KrausChannel ch =
          spec.kind == qpt::ChannelSpec::Kind::kraus_file
              ? qpt::load_channel_file(spec.path)
              : qpt::named_channel(spec);
      const auto rep = qpt::validate_channel(ch);
      std::cout << "cp: " << (rep.is_cp ? "yes" : "no")
                << "\ntp: " << (rep.is_tp ? "yes" : "no")
                << "\nhermitian_chi: " << (rep.is_hermitian ? "yes" : "no")
                << "\nmin_chi_eigenvalue: "
                << qpt::format_double(rep.min_chi_eigenvalue)
                << "\ntp_deficit: " << qpt::format_double(rep.tp_deficit)
                << "\n";
      if (!rep.all_pass()) return 2;
    }
  } catch (const qpt::ScopeError& e) {
    std::cerr << "scope error: " << e.what() << "\n";
    return 3;
  } catch (const qpt::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
