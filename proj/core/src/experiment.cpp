#include "qpt/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json_util.hpp"
#include "qpt/aapt_jsm.hpp"
#include "qpt/aapt_mub.hpp"
#include "qpt/aapt_povm.hpp"
#include "qpt/dcqd.hpp"
#include "qpt/rng.hpp"
#include "qpt/sqpt.hpp"

namespace qpt {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double_field(const std::string& v, const std::string& field) {
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ValidationError("config field " + field + ": bad number '" + v + "'");
  }
}

std::uint64_t parse_u64_field(const std::string& v, const std::string& field) {
  try {
    // stoull silently wraps negative input, so reject the sign up front.
    if (v.empty() || v[0] == '-' || v[0] == '+') throw std::invalid_argument(v);
    std::size_t used = 0;
    const std::uint64_t x = std::stoull(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ValidationError("config field " + field + ": bad integer '" + v +
                          "'");
  }
}

}  // namespace

void ExperimentConfig::check() const {
  if (trials < 1) {
    throw ValidationError("config field trials: must be at least 1");
  }
  if (!exact && shots < 1) {
    throw ValidationError("config field shots: sampled mode needs shots >= 1");
  }
  if (scheme != "all") {
    try {
      scheme_from_token(scheme);
    } catch (const ArgumentError&) {
      throw ValidationError("config field scheme: unknown scheme '" + scheme +
                            "'");
    }
  }
  if (input_kind != "bell" && input_kind != "werner") {
    throw ValidationError("config field input_kind: expected bell or werner");
  }
  if (werner_eps < 0.0 || werner_eps > 1.0) {
    throw ValidationError("config field input_kind: werner weight outside "
                          "[0, 1]");
  }
  if (!(alpha_sq > 0.0) || !(alpha_sq < 1.0)) {
    throw ValidationError("config field alpha_sq: must lie in (0, 1)");
  }
  if (output_dir.empty()) {
    throw ValidationError("config field output_dir: must not be empty");
  }
}

ExperimentConfig parse_experiment_config(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ValidationError("config line without '=': " + line);
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key == "channel") {
      cfg.channel = ChannelSpec::parse(val);
    } else if (key == "scheme") {
      cfg.scheme = val;
    } else if (key == "mode") {
      if (val == "exact") {
        cfg.exact = true;
      } else if (val == "sampled") {
        cfg.exact = false;
      } else {
        throw ValidationError("config field mode: expected exact or sampled");
      }
    } else if (key == "shots") {
      cfg.shots = parse_u64_field(val, "shots");
    } else if (key == "master_seed") {
      cfg.master_seed = parse_u64_field(val, "master_seed");
    } else if (key == "trials") {
      cfg.trials = static_cast<int>(parse_u64_field(val, "trials"));
    } else if (key == "output_dir") {
      cfg.output_dir = val;
    } else if (key == "alpha_sq") {
      cfg.alpha_sq = parse_double_field(val, "alpha_sq");
    } else if (key == "input_kind") {
      if (val == "bell") {
        cfg.input_kind = "bell";
      } else if (val.rfind("werner(", 0) == 0 && val.back() == ')') {
        cfg.input_kind = "werner";
        cfg.werner_eps = parse_double_field(
            val.substr(7, val.size() - 8), "input_kind");
      } else {
        throw ValidationError(
            "config field input_kind: expected bell or werner(eps)");
      }
    } else {
      throw ValidationError("unknown config key: " + key);
    }
  }
  cfg.check();
  return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_experiment_config(buf.str());
}

std::vector<Scheme> applicable_schemes(int n) {
  if (n == 1) {
    return {Scheme::sqpt, Scheme::aapt_jsm, Scheme::aapt_mub,
            Scheme::aapt_povm, Scheme::dcqd};
  }
  if (n == 2) return {Scheme::sqpt, Scheme::aapt_jsm};
  return {};
}

namespace {

Matrix run_one(Scheme s, const KrausChannel& ch, const SamplingMode& mode,
               const ExperimentConfig& cfg) {
  switch (s) {
    case Scheme::sqpt:
      return sqpt_run(ch, mode).chi.chi;
    case Scheme::aapt_jsm: {
      DensityOperator input = cfg.input_kind == "werner"
                                  ? werner_input(cfg.werner_eps)
                                  : bell_input(ch.n);
      if (cfg.input_kind == "werner" && ch.n != 1) {
        throw ValidationError(
            "config field input_kind: werner input is single-qubit only");
      }
      return jsm_run(ch, input, mode).chi.chi;
    }
    case Scheme::aapt_mub:
      return mub_qpt(ch, mode).chi.chi;
    case Scheme::aapt_povm:
      return povm_qpt(ch, mode).chi.chi;
    case Scheme::dcqd:
      return dcqd_full(ch, mode, Complex(std::sqrt(cfg.alpha_sq), 0.0)).chi.chi;
  }
  throw ArgumentError("unknown scheme");
}

}  // namespace

ComparisonReport run_experiment(const ExperimentConfig& cfg) {
  cfg.check();
  const KrausChannel ch = cfg.channel.kind == ChannelSpec::Kind::kraus_file
                              ? load_channel_file(cfg.channel.path)
                              : named_channel(cfg.channel);

  std::vector<Scheme> schemes;
  if (cfg.scheme == "all") {
    schemes = applicable_schemes(ch.n);
    if (schemes.empty()) {
      throw ScopeError("run_experiment: no scheme supports n = " +
                       std::to_string(ch.n));
    }
  } else {
    const Scheme s = scheme_from_token(cfg.scheme);
    const auto ok = applicable_schemes(ch.n);
    if (std::find(ok.begin(), ok.end(), s) == ok.end()) {
      throw ScopeError("run_experiment: scheme " + cfg.scheme +
                       " does not support n = " + std::to_string(ch.n));
    }
    schemes = {s};
  }

  ComparisonReport rep;
  rep.config = cfg;
  rep.channel_label = cfg.channel.to_string();
  rep.n = ch.n;
  rep.chi_true = kraus_to_chi(ch);

  const auto resources = resource_table(ch.n);
  for (const Scheme s : schemes) {
    const auto& row = resources[static_cast<std::size_t>(s)];
    SchemeSummary sum;
    sum.scheme = s;
    sum.config_count = row.n_exp;

    const auto t0 = std::chrono::steady_clock::now();
    std::vector<double> errs, qcbs;
    for (int t = 0; t < cfg.trials; ++t) {
      TrialRow tr;
      tr.scheme = s;
      tr.trial = t;
      tr.configs = row.n_exp;
      SamplingMode mode = SamplingMode::exact_mode();
      if (!cfg.exact) {
        const std::uint64_t idx =
            static_cast<std::uint64_t>(s) *
                static_cast<std::uint64_t>(cfg.trials) +
            static_cast<std::uint64_t>(t);
        tr.seed = RandomSource::derive_seed(cfg.master_seed, idx);
        tr.shots = cfg.shots;
        mode = SamplingMode::sampled(cfg.shots, tr.seed);
      }
      const Matrix est = run_one(s, ch, mode, cfg);
      if (t == 0) sum.chi_est = est;
      const ChiDistance d = chi_distance_metrics(est, rep.chi_true.chi);
      tr.frobenius = d.frobenius;
      tr.qcb = d.qcb;
      errs.push_back(d.frobenius);
      qcbs.push_back(d.qcb);
      rep.rows.push_back(tr);
    }
    sum.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();

    double mean = 0.0, qmean = 0.0;
    for (std::size_t i = 0; i < errs.size(); ++i) {
      mean += errs[i];
      qmean += qcbs[i];
    }
    mean /= static_cast<double>(errs.size());
    qmean /= static_cast<double>(qcbs.size());
    double var = 0.0;
    for (const double e : errs) var += (e - mean) * (e - mean);
    var /= static_cast<double>(errs.size());
    sum.frobenius_mean = mean;
    sum.frobenius_std = std::sqrt(var);
    sum.qcb_mean = qmean;
    sum.total_shots = cfg.exact ? 0
                                : row.n_exp * cfg.shots *
                                      static_cast<std::uint64_t>(cfg.trials);
    rep.summaries.push_back(sum);
  }
  return rep;
}

namespace {

std::filesystem::path report_dir(const ComparisonReport& r) {
  const char* env = std::getenv("QPT_OUTPUT_DIR");
  return std::filesystem::path(env != nullptr ? env : r.config.output_dir);
}

void write_text_file(const std::filesystem::path& p, const std::string& body) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw IoError("cannot write " + p.string());
  out << body;
  if (!out) throw IoError("short write to " + p.string());
}

std::string report_csv(const ComparisonReport& r) {
  std::string s = "scheme,trial,frobenius,qcb,configs,shots,seed\n";
  for (const auto& row : r.rows) {
    s += scheme_token(row.scheme) + "," + std::to_string(row.trial) + "," +
         format_double(row.frobenius) + "," + format_double(row.qcb) + "," +
         std::to_string(row.configs) + "," + std::to_string(row.shots) + "," +
         std::to_string(row.seed) + "\n";
  }
  return s;
}

std::string report_json(const ComparisonReport& r) {
  using detail::json;
  json j;
  j["schema_version"] = 1;
  j["channel"] = r.channel_label;
  j["n"] = r.n;
  j["scheme"] = r.config.scheme;
  j["mode"] = r.config.exact ? "exact" : "sampled";
  j["shots"] = r.config.shots;
  j["master_seed"] = r.config.master_seed;
  j["trials"] = r.config.trials;
  j["chi_true"] = detail::matrix_to_json_obj(r.chi_true.chi);
  j["rows"] = json::array();
  for (const auto& row : r.rows) {
    json jr;
    jr["scheme"] = scheme_token(row.scheme);
    jr["trial"] = row.trial;
    jr["frobenius"] = row.frobenius;
    jr["qcb"] = row.qcb;
    jr["configs"] = row.configs;
    jr["shots"] = row.shots;
    jr["seed"] = row.seed;
    j["rows"].push_back(jr);
  }
  j["summaries"] = json::array();
  for (const auto& s : r.summaries) {
    json js;
    js["scheme"] = scheme_token(s.scheme);
    js["chi_est"] = detail::matrix_to_json_obj(s.chi_est);
    js["frobenius_mean"] = s.frobenius_mean;
    js["frobenius_std"] = s.frobenius_std;
    js["qcb_mean"] = s.qcb_mean;
    js["config_count"] = s.config_count;
    js["total_shots"] = s.total_shots;
    j["summaries"].push_back(js);
  }
  return j.dump(2) + "\n";
}

std::string report_md(const ComparisonReport& r) {
  const auto resources = resource_table(r.n);
  std::string s;
  s += "# Process tomography comparison\n\n";
  s += "Channel: `" + r.channel_label + "`, n = " + std::to_string(r.n) +
       ", mode: " + (r.config.exact ? "exact" : "sampled");
  if (!r.config.exact) {
    s += ", shots/config: " + std::to_string(r.config.shots) +
         ", trials: " + std::to_string(r.config.trials);
  }
  s += "\n\n";
  s += "| Scheme | dim(H) | Inputs | Meas./input | Configs | Mean Frobenius "
       "| Mean QCB |\n";
  s += "|---|---|---|---|---|---|---|\n";
  for (const auto& sum : r.summaries) {
    const auto& row = resources[static_cast<std::size_t>(sum.scheme)];
    s += "| " + scheme_display_name(sum.scheme) + " | " +
         std::to_string(row.hilbert_dim) + " | " +
         std::to_string(row.n_inputs) + " | " +
         std::to_string(row.n_meas_per_input) + " | " +
         std::to_string(row.n_exp) + " | " +
         format_double(sum.frobenius_mean) + " | " +
         format_double(sum.qcb_mean) + " |\n";
  }
  return s;
}

}  // namespace

std::vector<std::string> emit_report(const ComparisonReport& r,
                                     const std::string& format) {
  const auto dir = report_dir(r);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string());

  std::string body;
  if (format == "csv") {
    body = report_csv(r);
  } else if (format == "json") {
    body = report_json(r);
  } else if (format == "md") {
    body = report_md(r);
  } else {
    throw ArgumentError("emit_report: unknown format " + format);
  }
  const auto path = dir / ("report." + format);
  write_text_file(path, body);
  return {path.string()};
}

}  // namespace qpt
