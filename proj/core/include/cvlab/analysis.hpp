#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "cvlab/exact.hpp"
#include "cvlab/rational.hpp"

namespace cvlab {

/// Divisors d of n with d >= lo, ascending (trial division up to sqrt(n)).
std::vector<std::int64_t> divisors(std::int64_t n, std::int64_t lo = 1);

struct SweepRow {
  std::int64_t n = 0;
  std::int64_t k = 0;
  std::int64_t m = 0;
  PrecisionValue cov_exact;
  PrecisionValue mse_exact;
  std::optional<double> cov_leading;  // empty for m = 1
  std::optional<double> rel_err_leading;
  ExactRational mse_holdout;  // 1/(4n)
};

/// One row per divisor k >= 2 of n, ascending k.
std::vector<SweepRow> sweep(std::int64_t n, PrecisionMode mode, unsigned workers = 0);

/// Rational when n fits under the exact cap, log-space otherwise.
PrecisionMode default_mode(std::int64_t n);

struct Argmin {
  std::vector<std::int64_t> k_star;  // every minimizer, ascending
  PrecisionValue value;
};

/// Minimizers of the CV MSE over divisors k >= 2. Rejects odd n.
Argmin argmin_mse(std::int64_t n, std::optional<PrecisionMode> mode = std::nullopt);
/// Minimizers of the fold covariance over divisors k >= 2. Rejects 3 not dividing n.
Argmin argmin_cov(std::int64_t n, std::optional<PrecisionMode> mode = std::nullopt);

/// min_k MSE / (1/(4n)). Rejects odd n.
double gap_ratio(std::int64_t n, std::optional<PrecisionMode> mode = std::nullopt);

struct MonotonicityResult {
  bool holds = true;
  bool asserted = false;  // n >= threshold
  /// First (m1, m2), m1 < m2, with Cov(n, m1) <= Cov(n, m2), or
  /// (n/3, n/2) when Cov(n, n/3) >= Cov(n, n/2).
  std::optional<std::pair<std::int64_t, std::int64_t>> first_violation;
};

/// Strict decrease of Cov(n, m) over divisors m <= n/3, and
/// Cov(n, n/3) < Cov(n, n/2) when 6 | n.
MonotonicityResult monotonicity_check(std::int64_t n, std::int64_t threshold = 60,
                                      std::optional<PrecisionMode> mode = std::nullopt);

struct MinimaxRow {
  std::int64_t n = 0;
  std::vector<std::int64_t> k_star;
  PrecisionValue min_mse;
  double mse_times_n = 0;
  double normalized = 0;  // min-MSE * n / sqrt(k*), smallest k*
};

std::vector<MinimaxRow> minimax_table(const std::vector<std::int64_t>& n_list);

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

/// 12 significant digits.
std::string format_real(double value);

}  // namespace cvlab
