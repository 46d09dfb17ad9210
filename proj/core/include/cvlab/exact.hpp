#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "cvlab/rational.hpp"

namespace cvlab {

/// Equal-fold CV layout: n samples split into k folds of size m = n / k.
class FoldScheme {
 public:
  /// Throws InvalidArgument unless 2 <= k <= n and k divides n.
  FoldScheme(std::int64_t n, std::int64_t k);

  /// Layout with k = n / m; requires m | n and 1 <= m <= n/2.
  static FoldScheme from_fold_size(std::int64_t n, std::int64_t m);

  [[nodiscard]] std::int64_t n() const { return n_; }
  [[nodiscard]] std::int64_t k() const { return k_; }
  [[nodiscard]] std::int64_t m() const { return m_; }

  friend bool operator==(const FoldScheme&, const FoldScheme&) = default;

 private:
  std::int64_t n_;
  std::int64_t k_;
  std::int64_t m_;
};

enum class PrecisionMode { ExactRational, LogSpaceFloat };

std::string to_string(PrecisionMode mode);
PrecisionMode parse_precision_mode(const std::string& text);

struct ExactLimits {
  /// Rational evaluation is refused above this n; denominators are 2^n.
  std::int64_t exact_n_cap = 4096;
};

struct CovarianceQuery {
  std::int64_t n = 0;
  std::int64_t m = 0;
  PrecisionMode mode = PrecisionMode::ExactRational;
};

/// A nonnegative quantity known either exactly or through its logarithm.
/// `log_value` is always populated; `rational` only in exact mode.
struct PrecisionValue {
  std::optional<ExactRational> rational;
  long double log_value = 0;

  static PrecisionValue from_rational(ExactRational value);
  static PrecisionValue from_log(long double log_value);

  [[nodiscard]] bool is_exact() const { return rational.has_value(); }
  [[nodiscard]] double to_double() const;
  [[nodiscard]] long double to_long_double() const;
  /// "num/den" when exact, else the float with 12 significant digits.
  [[nodiscard]] std::string to_string() const;
};

/// C(r, t), zero for t outside [0, r].
ExactRational binomial(std::int64_t r, std::int64_t t);
mpz_class binomial_integer(std::int64_t r, std::int64_t t);

/// Fold covariance of Majority under uniformly random labels,
///   Cov(n, m) = 2^-n * sum_{j=0}^{m-1} C(m-1, j)^2 C(n-2m, floor((n-m)/2) - j).
/// Rational mode is exact; log-space mode sums exp(log terms) with
/// compensated accumulation (relative error well under 1e-10).
PrecisionValue exact_fold_covariance(const CovarianceQuery& query, const ExactLimits& limits = {});

ExactRational fold_covariance_rational(std::int64_t n, std::int64_t m, const ExactLimits& limits = {});
long double fold_covariance_log(std::int64_t n, std::int64_t m);

/// ((k-1)/k) Cov(n, n/k) + 1/(4n).
ExactRational exact_cv_mse(const FoldScheme& scheme, const ExactLimits& limits = {});
PrecisionValue cv_mse(const FoldScheme& scheme, PrecisionMode mode, const ExactLimits& limits = {});

/// Cov(n, 1) = 2^-n C(n-2, floor((n-1)/2)).
ExactRational endpoint_cov_m1(std::int64_t n);
/// Cov(n, n/2) = (2^-l C(l, floor(n/4)))^2 / 4 with l = n/2 - 1; n even.
ExactRational endpoint_cov_half(std::int64_t n);

struct IdentitySides {
  ExactRational lhs;
  ExactRational rhs;
};

/// lhs = Cov(X, 1{X >= a+1}) for X ~ Bin(m, 1/2), from the mass function;
/// rhs = (m/4) P(Bin(m-1, 1/2) = a).
IdentitySides conditional_cov_identity(std::int64_t m, std::int64_t a);

/// S_r = 2^-2r C(2r, r).
ExactRational central_binomial_mass(std::int64_t r);

struct WeightMoments {
  ExactRational mean;
  ExactRational variance;
};

/// Closed-form moments of J with P(J = j) proportional to C(r, j)^2
/// (hypergeometric(2r, r, r)): mean r/2, variance r^2 / (4(2r - 1)).
WeightMoments hypergeom_weight_moments(std::int64_t r);
/// The same moments by direct summation over the weights.
WeightMoments hypergeom_weight_moments_direct(std::int64_t r);

}  // namespace cvlab
