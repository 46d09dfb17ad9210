#include "cvlab/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "cvlab/algorithm.hpp"
#include "cvlab/analysis.hpp"
#include "cvlab/asymptotics.hpp"
#include "cvlab/error.hpp"
#include "cvlab/exact.hpp"
#include "cvlab/oracle.hpp"
#include "cvlab/sim.hpp"

namespace cvlab {

namespace {

using Clock = std::chrono::steady_clock;

constexpr double kRuntimeBudget = 600.0;

std::string fmt(double value, int digits = 6) {
  std::ostringstream os;
  os << std::setprecision(digits) << value;
  return os.str();
}

std::string join(const std::vector<std::int64_t>& values) {
  std::string s = "{";
  for (std::size_t i = 0; i < values.size(); ++i) s += (i ? "," : "") + std::to_string(values[i]);
  return s + "}";
}

CriterionResult exact_vs_brute_force() {
  CriterionResult r{1, "exact vs brute force", true, "", "", 0};
  int checked = 0;
  int mismatches = 0;
  for (std::int64_t n = 2; n <= 16; ++n) {
    for (const std::int64_t k : divisors(n, 2)) {
      const FoldScheme scheme(n, k);
      const OracleResult brute = bitstring_cv_oracle(scheme, AlgorithmSpec::majority());
      const ExactRational cov = fold_covariance_rational(n, scheme.m());
      if (cov != brute.fold_covariance || exact_cv_mse(scheme) != brute.mse) ++mismatches;
      ++checked;
    }
  }
  r.passed = mismatches == 0;
  r.measured = std::to_string(mismatches) + " mismatches over " + std::to_string(checked) + " (n, k)";
  r.expected = "0 mismatches";
  return r;
}

CriterionResult oracle_agreement() {
  CriterionResult r{2, "oracle cross-agreement", true, "", "", 0};
  int checked = 0;
  int mismatches = 0;
  for (std::int64_t n = 2; n <= 20; ++n) {
    for (const std::int64_t k : divisors(n, 2)) {
      const FoldScheme scheme(n, k);
      const OracleResult brute = bitstring_cv_oracle(scheme, AlgorithmSpec::majority());
      const OracleResult counted = count_cv_oracle(scheme);
      const FactorizationSides f = factorization_check(scheme);
      const bool same = brute.mse == counted.mse && brute.fold_covariance == counted.fold_covariance &&
                        brute.fold_variance == counted.fold_variance &&
                        brute.estimator_mean == counted.estimator_mean && f.direct == f.factored;
      if (!same) ++mismatches;
      ++checked;
    }
  }
  r.passed = mismatches == 0;
  r.measured = std::to_string(mismatches) + " mismatches over " + std::to_string(checked) + " (n, k)";
  r.expected = "0 mismatches";
  return r;
}

CriterionResult endpoint_identities() {
  CriterionResult r{3, "endpoint identities", true, "", "", 0};
  int mismatches = 0;
  for (std::int64_t n = 2; n <= 1000; ++n) {
    if (endpoint_cov_m1(n) != fold_covariance_rational(n, 1)) ++mismatches;
    if (n % 2 == 0 && endpoint_cov_half(n) != fold_covariance_rational(n, n / 2)) ++mismatches;
  }
  long double worst = 0;
  for (std::int64_t n = 1002; n <= 4096; n += 2) {
    const long double m1 = endpoint_cov_m1(n).log();
    const long double half = endpoint_cov_half(n).log();
    worst = std::max(worst, std::abs(std::expm1(fold_covariance_log(n, 1) - m1)));
    worst = std::max(worst, std::abs(std::expm1(fold_covariance_log(n, n / 2) - half)));
  }
  r.passed = mismatches == 0 && worst <= 1e-10L;
  r.measured = std::to_string(mismatches) + " rational mismatches (n <= 1000); max log-space rel err " +
               fmt(static_cast<double>(worst), 3) + " (n <= 4096)";
  r.expected = "0 mismatches; rel err <= 1e-10";
  return r;
}

CriterionResult conditional_identity() {
  CriterionResult r{4, "conditional covariance identity", true, "", "", 0};
  int checked = 0;
  int mismatches = 0;
  for (std::int64_t m = 1; m <= 64; ++m) {
    for (std::int64_t a = -2; a <= m + 2; ++a) {
      const IdentitySides s = conditional_cov_identity(m, a);
      if (s.lhs != s.rhs) ++mismatches;
      ++checked;
    }
  }
  r.passed = mismatches == 0;
  r.measured = std::to_string(mismatches) + " mismatches over " + std::to_string(checked) + " (m, a)";
  r.expected = "0 mismatches";
  return r;
}

// Up to `count` entries spread evenly over `values`, endpoints included.
std::vector<std::int64_t> spread(const std::vector<std::int64_t>& values, std::size_t count) {
  if (values.size() <= count) return values;
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(values[i * (values.size() - 1) / (count - 1)]);
  return out;
}

CriterionResult regime_a() {
  CriterionResult r{5, "leading-term regime", true, "", "", 0};
  double worst = 0;
  std::int64_t at_n = 0, at_m = 0;
  int points = 0;
  for (const std::int64_t n : {10'000, 100'000, 1'000'000}) {
    std::vector<std::int64_t> ms = divisors(n, 50);
    std::erase_if(ms, [n](std::int64_t m) { return 3 * m > n; });
    for (const std::int64_t m : spread(ms, 20)) {
      const double exact = static_cast<double>(std::exp(fold_covariance_log(n, m)));
      const double err = std::abs(exact / leading_term(n, m) - 1);
      if (err > worst) {
        worst = err;
        at_n = n;
        at_m = m;
      }
      ++points;
    }
  }
  r.passed = worst <= 0.05;
  r.measured = "max |exact/M - 1| = " + fmt(worst, 4) + " at (" + std::to_string(at_n) + ", " +
               std::to_string(at_m) + ") over " + std::to_string(points) + " points";
  r.expected = "<= 0.05";
  return r;
}

CriterionResult endpoint_asymptotic() {
  CriterionResult r{6, "half-fold endpoint asymptotic", true, "", "", 0};
  double worst = 0;
  std::int64_t at = 0;
  for (std::int64_t n = 100; n <= 5000; n += 2) {
    const long double cov = std::exp(endpoint_cov_half(n).log());
    const double scaled = static_cast<double>(std::abs(cov * std::numbers::pi_v<long double> * (n - 2) - 1) * n);
    if (scaled > worst) {
      worst = scaled;
      at = n;
    }
  }
  r.passed = worst <= 3.0;
  r.measured = "max n |Cov(n, n/2) pi (n-2) - 1| = " + fmt(worst, 6) + " at n = " + std::to_string(at);
  r.expected = "<= 3";
  return r;
}

CriterionResult poisson_lattice() {
  CriterionResult r{7, "lattice sum vs theta form", true, "", "", 0};
  double worst = 0;
  int pairs = 0;
  for (const std::int64_t n : {60, 600, 6000, 60'000, 600'000}) {
    for (const std::int64_t d : {3, 4, 5, 6, 7, 10, 12, 15, 20, 30}) {
      const std::int64_t m = n / d + (d % 2);  // odd offsets vary the parity of n - m
      const double direct = triple_gaussian_lattice_sum(n, m, LatticeMode::Direct);
      const double theta = triple_gaussian_lattice_sum(n, m, LatticeMode::ThetaForm);
      worst = std::max(worst, std::abs(theta / direct - 1));
      ++pairs;
    }
  }
  r.passed = worst <= 1e-12;
  r.measured = "max rel diff " + fmt(worst, 3) + " over " + std::to_string(pairs) + " pairs";
  r.expected = "<= 1e-12";
  return r;
}

CriterionResult llt_envelope() {
  CriterionResult r{8, "local limit envelope", true, "", "", 0};
  double small = 0;
  double large = 0;
  for (std::int64_t s = 2; s <= 5000; ++s) {
    const double scaled = llt_sup_error(s) * std::pow(static_cast<double>(s), 1.5);
    if (s <= 50) small = std::max(small, scaled);
    large = std::max(large, scaled);
  }
  r.passed = std::isfinite(large) && large <= 2 * small;
  r.measured = "max r^1.5 err = " + fmt(large, 5) + " on [2, 5000], " + fmt(small, 5) + " on [2, 50]";
  r.expected = "finite, <= 2x the [2, 50] value";
  return r;
}

CriterionResult minimizers() {
  CriterionResult r{9, "minimizers and monotonicity", true, "", "", 0};
  std::vector<std::string> failures;
  for (const std::int64_t n : {100, 500, 1000, 2000}) {
    const Argmin a = argmin_mse(n);
    if (a.k_star != std::vector<std::int64_t>{2}) failures.push_back("argmin_mse(" + std::to_string(n) + ")=" + join(a.k_star));
  }
  for (const std::int64_t n : {60, 300, 600, 1200}) {
    const Argmin a = argmin_cov(n);
    if (a.k_star != std::vector<std::int64_t>{3}) failures.push_back("argmin_cov(" + std::to_string(n) + ")=" + join(a.k_star));
  }
  for (const std::int64_t n : {120, 720, 2520}) {
    if (!monotonicity_check(n).holds) failures.push_back("monotonicity(" + std::to_string(n) + ")");
  }
  const Argmin six = argmin_mse(6);
  const bool tie = six.k_star == std::vector<std::int64_t>{2, 3} && six.value.rational &&
                   *six.value.rational == ExactRational(7, 96);
  if (!tie) failures.push_back("argmin_mse(6)=" + join(six.k_star));
  r.passed = failures.empty();
  if (failures.empty()) {
    r.measured = "all 11 sweeps as expected; n=6 tie {2,3} at 7/96";
  } else {
    for (const auto& f : failures) r.measured += (r.measured.empty() ? "" : "; ") + f;
  }
  r.expected = "mse {2}, cov {3}, monotone, n=6 -> {2,3}";
  return r;
}

CriterionResult gap_and_minimax() {
  CriterionResult r{10, "gap ratio and minimax column", true, "", "", 0};
  const double target_gap = 1 + 2 / std::numbers::pi;
  const double gap = gap_ratio(10'000);
  const double target_col = 0.25 + 1 / (2 * std::numbers::pi);
  double worst = 0;
  for (const MinimaxRow& row : minimax_table({1000, 2000, 4000, 10'000})) {
    worst = std::max(worst, std::abs(row.mse_times_n - target_col));
  }
  r.passed = std::abs(gap - target_gap) <= 0.01 && worst <= 0.02;
  r.measured = "gap_ratio(10^4) = " + fmt(gap, 6) + "; max |min-MSE n - target| = " + fmt(worst, 4);
  r.expected = "|gap - " + fmt(target_gap, 6) + "| <= 0.01; column dev <= 0.02";
  return r;
}

CriterionResult counterexample() {
  CriterionResult r{11, "anticorrelated counterexample", true, "", "", 0};
  const AnticorrStability s = loss_stability_anticorr(2);
  bool ok = s.beta == ExactRational(1, 4) && s.mse.is_zero();
  std::string sims;
  for (const std::int64_t n : {4, 8, 12}) {
    const SimEstimate e = run_cv_mse(DataSpec::uniform_threshold(n), AlgorithmSpec::anticorr_interval(), 2, 1000,
                                     static_cast<std::uint64_t>(n));
    ok = ok && e.mean == 0.0 && e.std_error == 0.0;
    sims += " n=" + std::to_string(n) + ":" + fmt(e.mean) + "+-" + fmt(e.std_error);
  }
  r.passed = ok;
  r.measured = "beta=" + s.beta.to_string() + " mse=" + s.mse.to_string() + ";" + sims;
  r.expected = "beta=1/4 mse=0; simulated 0+-0";
  return r;
}

CriterionResult stability_law() {
  CriterionResult r{12, "stability law and constant baseline", true, "", "", 0};
  double lo = 1e9;
  double hi = 0;
  for (const std::int64_t n : {100, 400, 1600}) {
    for (const std::int64_t m : {n / 100, n / 10, n / 2}) {
      const double v = exact_hypothesis_stability(n, m, TiePolicy::ToZero).to_double() *
                       std::sqrt(static_cast<double>(n) / static_cast<double>(m));
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  bool ok = lo >= 0.2 && hi <= 0.5;
  std::string sims;
  for (const auto& [n, k] : {std::pair<std::int64_t, std::int64_t>{10, 5}, {100, 10}}) {
    const SimEstimate e =
        run_cv_mse(DataSpec::point_mass(n, 0.5), AlgorithmSpec::constant(0), k, 100'000, 2024 + static_cast<std::uint64_t>(n));
    const double target = 0.25 / static_cast<double>(n);
    const double z = std::abs(e.mean - target) / e.std_error;
    ok = ok && z <= 3;
    sims += " n=" + std::to_string(n) + ": z=" + fmt(z, 3);
  }
  r.passed = ok;
  r.measured = "hs sqrt(n/m) in [" + fmt(lo, 4) + ", " + fmt(hi, 4) + "];" + sims;
  r.expected = "bracket within [0.2, 0.5]; |z| <= 3";
  return r;
}

CriterionResult calibration() {
  CriterionResult r{13, "Monte Carlo calibration", true, "", "", 0};
  const double target = exact_cv_mse(FoldScheme(12, 3)).to_double();
  int hits = 0;
  for (std::uint64_t rep = 0; rep < 100; ++rep) {
    const SimEstimate e = run_cv_mse(DataSpec::point_mass(12), AlgorithmSpec::majority(), 3, 4000, 1000 + rep);
    if (std::abs(e.mean - target) <= 3 * e.std_error) ++hits;
  }
  r.passed = hits >= 96;
  r.measured = std::to_string(hits) + "/100 runs within 3 SE of 446/12288";
  r.expected = ">= 96/100";
  return r;
}

}  // namespace

Suite parse_suite(const std::string& name) {
  if (name == "exact") return Suite::Exact;
  if (name == "asymptotic") return Suite::Asymptotic;
  if (name == "simulate") return Suite::Simulate;
  if (name == "all") return Suite::All;
  throw InvalidArgument("unknown suite '" + name + "' (expected exact, asymptotic, simulate or all)");
}

std::string to_string(Suite suite) {
  switch (suite) {
    case Suite::Exact: return "exact";
    case Suite::Asymptotic: return "asymptotic";
    case Suite::Simulate: return "simulate";
    case Suite::All: return "all";
  }
  return "unknown";
}

std::vector<int> suite_criteria(Suite suite) {
  switch (suite) {
    case Suite::Exact: return {1, 2, 3, 4};
    case Suite::Asymptotic: return {5, 6, 7, 8, 9, 10};
    case Suite::Simulate: return {11, 12, 13};
    case Suite::All: return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13};
  }
  return {};
}

CriterionResult run_criterion(int id) {
  const auto start = Clock::now();
  CriterionResult r;
  switch (id) {
    case 1: r = exact_vs_brute_force(); break;
    case 2: r = oracle_agreement(); break;
    case 3: r = endpoint_identities(); break;
    case 4: r = conditional_identity(); break;
    case 5: r = regime_a(); break;
    case 6: r = endpoint_asymptotic(); break;
    case 7: r = poisson_lattice(); break;
    case 8: r = llt_envelope(); break;
    case 9: r = minimizers(); break;
    case 10: r = gap_and_minimax(); break;
    case 11: r = counterexample(); break;
    case 12: r = stability_law(); break;
    case 13: r = calibration(); break;
    default: throw InvalidArgument("unknown criterion " + std::to_string(id));
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  if (id == 1 && r.seconds > 60) {
    r.passed = false;
    r.measured += " (over the 60 s budget)";
  }
  if (id == 5 && r.seconds > 120) {
    r.passed = false;
    r.measured += " (over the 120 s budget)";
  }
  return r;
}

std::vector<CriterionResult> run_suite(Suite suite, const std::function<void(const CriterionResult&)>& on_result) {
  std::vector<CriterionResult> results;
  const auto start = Clock::now();
  for (const int id : suite_criteria(suite)) {
    results.push_back(run_criterion(id));
    if (on_result) on_result(results.back());
  }
  if (suite == Suite::All) {
    CriterionResult total{0, "full suite runtime", true, "", "", 0};
    total.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    total.passed = total.seconds <= kRuntimeBudget;
    total.measured = fmt(total.seconds, 4) + " s";
    total.expected = "<= 600 s";
    results.push_back(total);
    if (on_result) on_result(results.back());
  }
  return results;
}

std::string format_result(const CriterionResult& result) {
  std::ostringstream os;
  os << (result.passed ? "PASS" : "FAIL") << "  ";
  if (result.id > 0) {
    os << std::setw(2) << result.id;
  } else {
    os << " -";
  }
  os << "  " << result.name << "  measured: " << result.measured << "  expected: " << result.expected << "  ("
     << std::fixed << std::setprecision(2) << result.seconds << " s)";
  return os.str();
}

}  // namespace cvlab
