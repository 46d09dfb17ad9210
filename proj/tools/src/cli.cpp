#include "cvlab/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "cvlab/acceptance.hpp"
#include "cvlab/analysis.hpp"
#include "cvlab/asymptotics.hpp"
#include "cvlab/error.hpp"
#include "cvlab/exact.hpp"
#include "cvlab/manifest.hpp"
#include "cvlab/sim.hpp"
#include "cvlab/sim_config.hpp"

namespace cvlab::cli {

namespace {

namespace fs = std::filesystem;

struct Options {
  std::int64_t n = 0;
  std::optional<std::int64_t> k;
  std::optional<std::int64_t> m;
  std::string mode;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> trials;
  std::string suite = "all";
  std::string config;
};

RunManifest make_manifest(const std::string& command, std::map<std::string, std::string> parameters) {
  RunManifest manifest;
  manifest.command = command;
  manifest.config_hash = config_hash(parameters);
  manifest.parameters = std::move(parameters);
  manifest.version = tool_version();
  manifest.timestamp = utc_timestamp();
  return manifest;
}

std::ofstream open_output(const std::string& path, std::ios::openmode mode = std::ios::out) {
  std::ofstream file(path, mode);
  require(static_cast<bool>(file), "cannot open " + path + " for writing");
  return file;
}

FoldScheme scheme_from(const Options& o) {
  require(o.k.has_value() != o.m.has_value(), "exactly one of --k or --m is required");
  return o.k ? FoldScheme(o.n, *o.k) : FoldScheme::from_fold_size(o.n, *o.m);
}

int cmd_exact(const Options& o, std::ostream& out) {
  const FoldScheme scheme = scheme_from(o);
  const PrecisionMode mode = o.mode.empty() ? default_mode(scheme.n()) : parse_precision_mode(o.mode);
  const PrecisionValue cov = exact_fold_covariance({scheme.n(), scheme.m(), mode});
  const PrecisionValue mse = cv_mse(scheme, mode);
  const ExactRational holdout(1, 4 * scheme.n());

  out << "n=" << scheme.n() << " k=" << scheme.k() << " m=" << scheme.m() << " mode=" << to_string(mode) << '\n'
      << "cov=" << cov.to_string() << '\n'
      << "mse=" << mse.to_string() << '\n'
      << "mse_holdout=" << holdout.to_string() << '\n';

  if (!o.out.empty()) {
    std::ofstream file = open_output(o.out);
    file << "n,k,m,mode,cov,mse,mse_holdout\n"
         << scheme.n() << ',' << scheme.k() << ',' << scheme.m() << ',' << to_string(mode) << ',' << cov.to_string()
         << ',' << mse.to_string() << ',' << holdout.to_string() << '\n';
    write_manifest(o.out, make_manifest("exact", {{"n", std::to_string(scheme.n())},
                                                  {"k", std::to_string(scheme.k())},
                                                  {"mode", to_string(mode)}}));
  }
  return kSuccess;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  require(o.n >= 2, "n must be at least 2");
  const PrecisionMode mode =
      o.mode.empty() || o.mode == "auto" ? default_mode(o.n) : parse_precision_mode(o.mode);
  const std::vector<SweepRow> rows = sweep(o.n, mode);
  if (o.out.empty()) {
    write_sweep_csv(out, rows);
    return kSuccess;
  }
  std::ofstream file = open_output(o.out);
  write_sweep_csv(file, rows);
  file.close();
  write_manifest(o.out, make_manifest("sweep", {{"n", std::to_string(o.n)}, {"mode", to_string(mode)}}));
  out << "wrote " << rows.size() << " rows to " << o.out << '\n';
  return kSuccess;
}

int cmd_simulate(const Options& o, std::ostream& out) {
  std::ifstream in(o.config);
  require(static_cast<bool>(in), "cannot read config " + o.config);
  SimConfig config = SimConfig::parse(in);
  if (o.seed) config.seed = *o.seed;
  if (o.trials) config.trials = *o.trials;

  const SimEstimate est = run_cv_mse(config.data, config.algo, config.k, config.trials, config.seed);
  const std::map<std::string, std::string> params = config.canonical();
  const std::string hash = config_hash(params);

  std::ostringstream row;
  row << hash << ',' << format_real(est.mean) << ',' << format_real(est.std_error) << ',' << est.trials << ','
      << est.seed << '\n';
  const std::string header = "config_hash,mean,std_error,trials,seed\n";

  if (o.out.empty()) {
    out << header << row.str();
    return kSuccess;
  }
  const bool fresh = !fs::exists(o.out) || fs::file_size(o.out) == 0;
  std::ofstream file = open_output(o.out, std::ios::app);
  if (fresh) file << header;
  file << row.str();
  file.close();

  RunManifest manifest = make_manifest("simulate", params);
  manifest.seed = config.seed;
  manifest.generator = kGeneratorName;
  write_manifest(o.out, manifest);
  out << row.str();
  return kSuccess;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const Suite suite = parse_suite(o.suite);
  std::ostringstream report;
  bool all_passed = true;
  int passed = 0;
  int total = 0;
  run_suite(suite, [&](const CriterionResult& r) {
    const std::string line = format_result(r);
    out << line << std::endl;
    report << line << '\n';
    all_passed = all_passed && r.passed;
    passed += r.passed ? 1 : 0;
    ++total;
  });
  const std::string summary = "verify --suite " + to_string(suite) + ": " + std::to_string(passed) + "/" +
                              std::to_string(total) + " passed";
  out << summary << '\n';
  if (!o.out.empty()) {
    std::ofstream file = open_output(o.out);
    file << report.str() << summary << '\n';
    file.close();
    write_manifest(o.out, make_manifest("verify", {{"suite", to_string(suite)}}));
  }
  return all_passed ? kSuccess : kVerificationFailure;
}

std::string optional_real(const std::optional<double>& value) { return value ? format_real(*value) : ""; }

int cmd_asymptotic(const Options& o, std::ostream& out) {
  const FoldScheme scheme = scheme_from(o);
  const std::int64_t n = scheme.n();
  const std::int64_t m = scheme.m();
  const CovarianceReport report = covariance_report(n, m);

  std::vector<std::pair<std::string, std::string>> fields{
      {"n", std::to_string(n)},
      {"m", std::to_string(m)},
      {"cov_exact", format_real(report.exact)},
      {"cov_leading", optional_real(report.leading)},
      {"rel_err_leading", optional_real(report.rel_err_leading)},
      {"cov_sublinear", optional_real(report.sublinear)},
      {"rel_err_sublinear", optional_real(report.rel_err_sublinear)},
      {"cov_theta", optional_real(report.theta_corrected)},
      {"rel_err_theta", optional_real(report.rel_err_theta)},
  };
  if (m >= 2 && 3 * m <= n) fields.emplace_back("error_budget", format_real(large_m_approx(n, m).error_budget));

  for (const auto& [key, value] : fields) {
    if (!value.empty()) out << key << '=' << value << '\n';
  }
  if (!o.out.empty()) {
    std::ofstream file = open_output(o.out);
    for (std::size_t i = 0; i < fields.size(); ++i) file << (i ? "," : "") << fields[i].first;
    file << '\n';
    for (std::size_t i = 0; i < fields.size(); ++i) file << (i ? "," : "") << fields[i].second;
    file << '\n';
    file.close();
    write_manifest(o.out, make_manifest("asymptotic", {{"n", std::to_string(n)}, {"m", std::to_string(m)}}));
  }
  return kSuccess;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"cvlab: exact, asymptotic and simulated k-fold CV risk for Majority", "cvlab"};
  app.set_version_flag("--version", tool_version());
  app.require_subcommand(1);

  Options o;
  auto add_nk = [&](CLI::App* sub) {
    sub->add_option("--n", o.n, "sample size")->required();
    sub->add_option("--k", o.k, "number of folds");
    sub->add_option("--m", o.m, "fold size n/k");
  };

  CLI::App* exact = app.add_subcommand("exact", "exact fold covariance and CV MSE");
  add_nk(exact);
  exact->add_option("--mode", o.mode, "rational | log (default: rational up to n = 4096)")->check(CLI::IsMember({"rational", "log"}));
  exact->add_option("--out", o.out, "write a CSV row and manifest here");

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "one row per divisor k >= 2 of n");
  sweep_cmd->add_option("--n", o.n, "sample size")->required();
  sweep_cmd->add_option("--mode", o.mode, "rational | log | auto")->check(CLI::IsMember({"rational", "log", "auto"}));
  sweep_cmd->add_option("--out", o.out, "CSV path (stdout when omitted)");

  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo CV MSE from a key=value config");
  simulate->add_option("config", o.config, "config file")->required();
  simulate->add_option("--seed", o.seed, "override the config seed");
  simulate->add_option("--trials", o.trials, "override the config trial count");
  simulate->add_option("--out", o.out, "CSV to append to (stdout when omitted)");

  CLI::App* verify = app.add_subcommand("verify", "run acceptance criteria");
  verify->add_option("--suite", o.suite, "exact | asymptotic | simulate | all")
      ->check(CLI::IsMember({"exact", "asymptotic", "simulate", "all"}));
  verify->add_option("--out", o.out, "write the report here");

  CLI::App* asymptotic = app.add_subcommand("asymptotic", "exact covariance next to its approximations");
  add_nk(asymptotic);
  asymptotic->add_option("--out", o.out, "write a CSV row and manifest here");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInvalidInput;
  }

  try {
    if (exact->parsed()) return cmd_exact(o, out);
    if (sweep_cmd->parsed()) return cmd_sweep(o, out);
    if (simulate->parsed()) return cmd_simulate(o, out);
    if (verify->parsed()) return cmd_verify(o, out);
    if (asymptotic->parsed()) return cmd_asymptotic(o, out);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  }
  return kInvalidInput;
}

}  // namespace cvlab::cli
