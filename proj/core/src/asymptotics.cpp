#include "cvlab/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cvlab/error.hpp"
#include "cvlab/exact.hpp"
#include "cvlab/log_space.hpp"

namespace cvlab {

namespace {

constexpr long double kPi = std::numbers::pi_v<long double>;

long double proxy(long double r, long double t) {
  const long double d = 2 * t - r;
  return std::sqrt(2 / (kPi * r)) * std::exp(-d * d / (2 * r));
}

// Real theta series 1 + 2 sum_t exp(-pi^2 t^2 / gamma) cos(2 pi t mu).
long double theta_series(long double gamma, long double mu, int t_max) {
  CompensatedSum<long double> acc;
  acc.add(1);
  // Reduce the phase once; cos(2 pi t mu) only depends on frac(mu).
  const long double phase = mu - std::floor(mu);
  for (int t = 1; t <= t_max; ++t) {
    const long double weight = std::exp(-kPi * kPi * t * t / gamma);
    if (weight < 1e-300L) break;
    acc.add(2 * weight * std::cos(2 * kPi * t * phase));
  }
  return acc.value();
}

// sum_j f(j) over j within 12 standard deviations of a Gaussian centred at
// mu with exp(-gamma (j - mu)^2) decay.
template <typename Term>
long double windowed_sum(long double gamma, long double mu, Term term) {
  const long double sigma = 1 / std::sqrt(2 * gamma);
  const auto lo = static_cast<std::int64_t>(std::floor(mu - 12 * sigma)) - 1;
  const auto hi = static_cast<std::int64_t>(std::ceil(mu + 12 * sigma)) + 1;
  CompensatedSum<long double> acc;
  for (std::int64_t j = lo; j <= hi; ++j) acc.add(term(static_cast<long double>(j)));
  return acc.value();
}

}  // namespace

double gaussian_proxy(double r, double t) {
  require(r > 0, "gaussian_proxy requires r > 0");
  return static_cast<double>(proxy(r, t));
}

double llt_sup_error(std::int64_t r) {
  require(r >= 2, "llt_sup_error requires r >= 2");
  // Both p_r and g_r are symmetric about r/2, so t <= r/2 covers the sup.
  mpz_class c = 1;
  long double worst = 0;
  for (std::int64_t t = 0; 2 * t <= r; ++t) {
    long exponent = 0;
    const double mantissa = mpz_get_d_2exp(&exponent, c.get_mpz_t());
    const long double mass = std::ldexp(static_cast<long double>(mantissa), static_cast<int>(exponent - r));
    worst = std::max(worst, std::abs(mass - proxy(static_cast<long double>(r), static_cast<long double>(t))));
    c *= static_cast<unsigned long>(r - t);
    mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(t + 1));
  }
  return static_cast<double>(worst);
}

double leading_term(std::int64_t n, std::int64_t m) {
  require(m >= 2, "leading term requires m >= 2");
  require(2 * m <= n, "m must not exceed n/2");
  const auto mm = static_cast<long double>(m);
  const auto nn = static_cast<long double>(n);
  return static_cast<double>(1 / (2 * kPi * std::sqrt((mm - 1) * (2 * nn - 3 * mm))));
}

double sublinear_approx(std::int64_t n, std::int64_t m) {
  require(m >= 1, "sublinear approximation requires m >= 1");
  require(3 * m <= n, "sublinear approximation requires m <= n/3");
  const long double central = std::exp(log_binomial(static_cast<std::uint64_t>(2 * m - 2), m - 1) -
                                       static_cast<long double>(2 * m - 2) * std::numbers::ln2_v<long double>);
  const auto spread = static_cast<long double>(2 * n - 3 * m);
  return static_cast<double>(central / (2 * std::sqrt(kPi * spread)));
}

ThetaParams ThetaParams::make(std::int64_t n, std::int64_t m) {
  require(m >= 2, "theta parameters require m >= 2");
  const std::int64_t shared = n - 2 * m;
  require(shared >= 1, "theta parameters require n - 2m >= 1");
  ThetaParams p;
  const auto mm = static_cast<double>(m);
  const auto nn = static_cast<double>(shared);
  p.alpha = 4.0 / (mm - 1);
  p.beta = 2.0 / nn;
  p.gamma = p.alpha + p.beta;
  p.epsilon = (n - m) % 2 == 0 ? 0.0 : 0.5;
  p.mu = (mm - 1) * (2 * nn + mm - 2 * p.epsilon) / (2 * (2 * nn + mm - 1));
  return p;
}

double theta_correction(const ThetaParams& params, int t_max) {
  require(params.gamma > 0, "theta correction requires gamma > 0");
  return static_cast<double>(theta_series(params.gamma, params.mu, t_max));
}

double triple_gaussian_lattice_sum(std::int64_t n, std::int64_t m, LatticeMode mode) {
  const ThetaParams p = ThetaParams::make(n, m);
  const std::int64_t shared = n - 2 * m;
  const auto fold = static_cast<long double>(m - 1);
  const auto big = static_cast<long double>(shared);
  const auto centre = static_cast<long double>((n - m) / 2);

  if (mode == LatticeMode::Direct) {
    const long double sum = windowed_sum(p.gamma, p.mu, [&](long double j) {
      const long double g = proxy(fold, j);
      return g * g * proxy(big, centre - j);
    });
    return static_cast<double>(sum);
  }

  // alpha beta / (alpha + beta) = 4 / (2N + m - 1); the centres differ by eps - 1/2.
  const long double spread = 2 * big + fold;  // 2N + m - 1
  const long double offset = static_cast<long double>(p.epsilon) - 0.5L;
  const long double prefactor = 2 / kPi / std::sqrt(fold * spread) * std::exp(-4 * offset * offset / spread);
  // Recompute the series in extended precision from exact rationals of gamma, mu.
  const long double gamma = 4 / fold + 2 / big;
  const long double mu = fold * (2 * big + fold + 1 - 2 * static_cast<long double>(p.epsilon)) / (2 * spread);
  return static_cast<double>(prefactor * theta_series(gamma, mu, 16));
}

PoissonSides poisson_summation_check(double gamma, double mu) {
  require(gamma > 0, "Poisson summation requires gamma > 0");
  const long double g = gamma;
  const long double c = mu;
  const long double lhs = windowed_sum(g, c, [&](long double j) { return std::exp(-g * (j - c) * (j - c)); });
  // Run the series until exp(-pi^2 t^2 / gamma) < 1e-40.
  const int t_max = static_cast<int>(std::ceil(std::sqrt(92.2L * g) / kPi)) + 1;
  const long double rhs = std::sqrt(kPi / g) * theta_series(g, c, t_max);
  return {static_cast<double>(lhs), static_cast<double>(rhs)};
}

LargeMApprox large_m_approx(std::int64_t n, std::int64_t m, const AsymptoticConstants& constants) {
  require(m >= 2, "large-m approximation requires m >= 2");
  require(3 * m <= n, "large-m approximation requires m <= n/3");
  const double budget = constants.large_m_c / (std::sqrt(static_cast<double>(n)) * std::pow(static_cast<double>(m), 1.5));
  return {leading_term(n, m), budget};
}

CovarianceReport covariance_report(std::int64_t n, std::int64_t m) {
  CovarianceReport report;
  report.n = n;
  report.m = m;
  const PrecisionMode mode = n <= ExactLimits{}.exact_n_cap ? PrecisionMode::ExactRational : PrecisionMode::LogSpaceFloat;
  report.exact = exact_fold_covariance({n, m, mode}).to_double();
  auto rel = [&](double approx) { return std::abs(approx / report.exact - 1); };
  if (m >= 2) {
    report.leading = leading_term(n, m);
    report.rel_err_leading = rel(*report.leading);
  }
  if (3 * m <= n) {
    report.sublinear = sublinear_approx(n, m);
    report.rel_err_sublinear = rel(*report.sublinear);
  }
  if (m >= 2 && n - 2 * m >= 1) {
    report.theta_corrected = triple_gaussian_lattice_sum(n, m, LatticeMode::ThetaForm) / 4;
    report.rel_err_theta = rel(*report.theta_corrected);
  }
  return report;
}

}  // namespace cvlab
