#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace cvlab {

/// Neumaier's variant of Kahan summation: carries the rounding error of every
/// addition in a separate term, so the result is accurate to a few ulps even
/// when summands differ wildly in magnitude.
template <typename Real>
class CompensatedSum {
 public:
  void add(Real value) {
    const Real t = sum_ + value;
    if (std::abs(sum_) >= std::abs(value)) {
      compensation_ += (sum_ - t) + value;
    } else {
      compensation_ += (value - t) + sum_;
    }
    sum_ = t;
  }
  CompensatedSum& operator+=(Real value) {
    add(value);
    return *this;
  }
  [[nodiscard]] Real value() const { return sum_ + compensation_; }

 private:
  Real sum_ = 0;
  Real compensation_ = 0;
};

/// ln(k!) for k up to a fixed cap, accumulated with compensated summation in
/// extended precision. Immutable after construction; safe to share.
class LogFactorialTable {
 public:
  static constexpr std::uint64_t kDefaultCap = std::uint64_t{1} << 16;

  explicit LogFactorialTable(std::uint64_t cap = kDefaultCap);

  [[nodiscard]] std::uint64_t cap() const { return table_.size() - 1; }
  /// ln(k!); uses the table for k <= cap and the Stirling series beyond.
  [[nodiscard]] long double log_factorial(std::uint64_t k) const;
  /// ln C(r, t); -inf outside 0 <= t <= r.
  [[nodiscard]] long double log_binomial(std::uint64_t r, std::int64_t t) const;

  /// Process-wide table with the default cap, built on first use.
  static const LogFactorialTable& shared();

 private:
  // ln k! - (k ln k - k + ln(2 pi k)/2), the Stirling remainder.
  [[nodiscard]] long double stirling_remainder(std::uint64_t k) const;

  std::vector<long double> table_;
};

/// ln C(r, t) from the shared table. Absolute error stays near 1e-13 up to
/// r = 1e7; returns -inf for t < 0 or t > r.
long double log_binomial(std::uint64_t r, std::int64_t t);

/// Accumulates exp(x_i) for log-space terms x_i. Terms must be supplied in two
/// passes: observe() every term to fix the peak, then add() every term.
class LogSumExp {
 public:
  void observe(long double log_term) {
    if (log_term > peak_) peak_ = log_term;
  }
  void add(long double log_term) {
    if (log_term == -std::numeric_limits<long double>::infinity()) return;
    sum_.add(std::exp(log_term - peak_));
  }
  /// ln of the accumulated sum; -inf if nothing positive was added.
  [[nodiscard]] long double log_value() const {
    const long double s = sum_.value();
    if (s <= 0) return -std::numeric_limits<long double>::infinity();
    return peak_ + std::log(s);
  }

 private:
  long double peak_ = -std::numeric_limits<long double>::infinity();
  CompensatedSum<long double> sum_;
};

/// Pairwise (cascade) summation with a fixed split rule, so the result depends
/// only on the input order, never on how work was scheduled.
double pairwise_sum(std::span<const double> values);

}  // namespace cvlab
