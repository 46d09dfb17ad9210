#include "cvlab/exact.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "cvlab/error.hpp"
#include "cvlab/log_space.hpp"

namespace cvlab {

FoldScheme::FoldScheme(std::int64_t n, std::int64_t k) : n_(n), k_(k), m_(0) {
  require(n >= 1, "n must be positive");
  require(k >= 2, "k must be at least 2");
  require(k <= n, "k must not exceed n");
  require(n % k == 0, "k must divide n");
  m_ = n / k;
}

FoldScheme FoldScheme::from_fold_size(std::int64_t n, std::int64_t m) {
  require(m >= 1, "m must be positive");
  require(n % m == 0, "m must divide n");
  require(2 * m <= n, "m must not exceed n/2");
  return FoldScheme(n, n / m);
}

std::string to_string(PrecisionMode mode) {
  return mode == PrecisionMode::ExactRational ? "rational" : "log";
}

PrecisionMode parse_precision_mode(const std::string& text) {
  if (text == "rational" || text == "exact") return PrecisionMode::ExactRational;
  if (text == "log" || text == "logspace") return PrecisionMode::LogSpaceFloat;
  throw InvalidArgument("unknown precision mode '" + text + "' (expected rational|log)");
}

PrecisionValue PrecisionValue::from_rational(ExactRational value) {
  PrecisionValue out;
  out.log_value = value.log();
  out.rational = std::move(value);
  return out;
}

PrecisionValue PrecisionValue::from_log(long double log_value) {
  PrecisionValue out;
  out.log_value = log_value;
  return out;
}

double PrecisionValue::to_double() const {
  if (rational) return rational->to_double();
  return static_cast<double>(std::exp(log_value));
}

long double PrecisionValue::to_long_double() const { return std::exp(log_value); }

std::string PrecisionValue::to_string() const {
  if (rational) return rational->to_string();
  std::ostringstream os;
  os << std::setprecision(12) << to_double();
  return os.str();
}

mpz_class binomial_integer(std::int64_t r, std::int64_t t) {
  require(r >= 0, "binomial requires r >= 0");
  if (t < 0 || t > r) return 0;
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(r), static_cast<unsigned long>(t));
  return out;
}

ExactRational binomial(std::int64_t r, std::int64_t t) { return ExactRational(binomial_integer(r, t)); }

namespace {

void validate(const CovarianceQuery& q, const ExactLimits& limits) {
  require(q.n >= 2, "n must be at least 2");
  require(q.m >= 1, "m must be positive");
  require(2 * q.m <= q.n, "m must not exceed n/2");
  require(q.n % q.m == 0, "m must divide n");
  if (q.mode == PrecisionMode::ExactRational) {
    require(q.n <= limits.exact_n_cap,
            "n exceeds exact_n_cap (" + std::to_string(limits.exact_n_cap) + ") for rational mode");
  }
}

struct SummationRange {
  std::int64_t shared;  // N = n - 2m
  std::int64_t centre;  // floor((n - m) / 2)
  std::int64_t first;   // smallest j with a nonzero summand
  std::int64_t last;    // largest such j
};

SummationRange summation_range(std::int64_t n, std::int64_t m) {
  SummationRange r{};
  r.shared = n - 2 * m;
  r.centre = (n - m) / 2;
  r.first = std::max<std::int64_t>(0, r.centre - r.shared);
  r.last = std::min<std::int64_t>(m - 1, r.centre);
  return r;
}

}  // namespace

ExactRational fold_covariance_rational(std::int64_t n, std::int64_t m, const ExactLimits& limits) {
  validate({n, m, PrecisionMode::ExactRational}, limits);
  const auto range = summation_range(n, m);
  mpz_class total = 0;
  if (range.first <= range.last) {
    mpz_class fold_coeff = binomial_integer(m - 1, range.first);
    mpz_class shared_coeff = binomial_integer(range.shared, range.centre - range.first);
    for (std::int64_t j = range.first;; ++j) {
      total += fold_coeff * fold_coeff * shared_coeff;
      if (j == range.last) break;
      // C(m-1, j+1) = C(m-1, j) (m-1-j) / (j+1)
      fold_coeff *= static_cast<unsigned long>(m - 1 - j);
      mpz_divexact_ui(fold_coeff.get_mpz_t(), fold_coeff.get_mpz_t(), static_cast<unsigned long>(j + 1));
      // C(N, t-1) = C(N, t) t / (N - t + 1), t = centre - j
      const std::int64_t t = range.centre - j;
      shared_coeff *= static_cast<unsigned long>(t);
      mpz_divexact_ui(shared_coeff.get_mpz_t(), shared_coeff.get_mpz_t(),
                      static_cast<unsigned long>(range.shared - t + 1));
    }
  }
  return ExactRational::dyadic(total, static_cast<unsigned long>(n));
}

long double fold_covariance_log(std::int64_t n, std::int64_t m) {
  validate({n, m, PrecisionMode::LogSpaceFloat}, {});
  const auto range = summation_range(n, m);
  const auto& table = LogFactorialTable::shared();
  const long double offset = static_cast<long double>(n) * std::numbers::ln2_v<long double>;
  auto log_term = [&](std::int64_t j) {
    return 2 * table.log_binomial(static_cast<std::uint64_t>(m - 1), j) +
           table.log_binomial(static_cast<std::uint64_t>(range.shared), range.centre - j);
  };
  LogSumExp acc;
  for (std::int64_t j = range.first; j <= range.last; ++j) acc.observe(log_term(j));
  for (std::int64_t j = range.first; j <= range.last; ++j) acc.add(log_term(j));
  return acc.log_value() - offset;
}

PrecisionValue exact_fold_covariance(const CovarianceQuery& query, const ExactLimits& limits) {
  validate(query, limits);
  if (query.mode == PrecisionMode::ExactRational) {
    return PrecisionValue::from_rational(fold_covariance_rational(query.n, query.m, limits));
  }
  return PrecisionValue::from_log(fold_covariance_log(query.n, query.m));
}

ExactRational exact_cv_mse(const FoldScheme& scheme, const ExactLimits& limits) {
  const ExactRational cov = fold_covariance_rational(scheme.n(), scheme.m(), limits);
  return ExactRational(scheme.k() - 1, scheme.k()) * cov + ExactRational(1, 4 * scheme.n());
}

PrecisionValue cv_mse(const FoldScheme& scheme, PrecisionMode mode, const ExactLimits& limits) {
  if (mode == PrecisionMode::ExactRational) {
    return PrecisionValue::from_rational(exact_cv_mse(scheme, limits));
  }
  const long double cov = std::exp(fold_covariance_log(scheme.n(), scheme.m()));
  const auto k = static_cast<long double>(scheme.k());
  const long double mse = (k - 1) / k * cov + 1.0L / (4.0L * static_cast<long double>(scheme.n()));
  return PrecisionValue::from_log(std::log(mse));
}

ExactRational endpoint_cov_m1(std::int64_t n) {
  require(n >= 2, "endpoint_cov_m1 requires n >= 2");
  return ExactRational::dyadic(binomial_integer(n - 2, (n - 1) / 2), static_cast<unsigned long>(n));
}

ExactRational endpoint_cov_half(std::int64_t n) {
  require(n >= 2, "endpoint_cov_half requires n >= 2");
  require(n % 2 == 0, "endpoint_cov_half requires even n");
  const std::int64_t ell = n / 2 - 1;
  const ExactRational mass = ExactRational::dyadic(binomial_integer(ell, n / 4), static_cast<unsigned long>(ell));
  return mass * mass / ExactRational(4);
}

IdentitySides conditional_cov_identity(std::int64_t m, std::int64_t a) {
  require(m >= 1, "conditional_cov_identity requires m >= 1");
  ExactRational joint;  // E[X 1{X >= a+1}] * 2^m
  ExactRational tail;   // P(X >= a+1) * 2^m
  for (std::int64_t x = std::max<std::int64_t>(0, a + 1); x <= m; ++x) {
    const ExactRational c = binomial(m, x);
    joint += ExactRational(x) * c;
    tail += c;
  }
  const ExactRational scale = ExactRational::dyadic(1, static_cast<unsigned long>(m));
  const ExactRational lhs = joint * scale - ExactRational(m, 2) * tail * scale;
  const ExactRational rhs = ExactRational(m, 4) * ExactRational::dyadic(binomial_integer(m - 1, a),
                                                                        static_cast<unsigned long>(m - 1));
  return {lhs, rhs};
}

ExactRational central_binomial_mass(std::int64_t r) {
  require(r >= 0, "central_binomial_mass requires r >= 0");
  return ExactRational::dyadic(binomial_integer(2 * r, r), static_cast<unsigned long>(2 * r));
}

WeightMoments hypergeom_weight_moments(std::int64_t r) {
  require(r >= 0, "hypergeom_weight_moments requires r >= 0");
  if (r == 0) return {ExactRational(0), ExactRational(0)};
  return {ExactRational(r, 2), ExactRational(r * r, 4 * (2 * r - 1))};
}

WeightMoments hypergeom_weight_moments_direct(std::int64_t r) {
  require(r >= 0, "hypergeom_weight_moments_direct requires r >= 0");
  mpz_class total = 0, first = 0, second = 0;
  for (std::int64_t j = 0; j <= r; ++j) {
    const mpz_class c = binomial_integer(r, j);
    const mpz_class w = c * c;
    total += w;
    first += w * j;
    second += w * j * j;
  }
  const ExactRational mean(first, total);
  const ExactRational variance = ExactRational(second, total) - mean * mean;
  return {mean, variance};
}

}  // namespace cvlab
