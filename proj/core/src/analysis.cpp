#include "cvlab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "cvlab/asymptotics.hpp"
#include "cvlab/error.hpp"
#include "cvlab/parallel.hpp"

namespace cvlab {

namespace {

long double value_of(const PrecisionValue& v) { return v.to_long_double(); }

// Negative when a < b, zero on equality; exact when both are rational.
int compare(const PrecisionValue& a, const PrecisionValue& b) {
  if (a.rational && b.rational) {
    const auto ord = *a.rational <=> *b.rational;
    return ord < 0 ? -1 : (ord > 0 ? 1 : 0);
  }
  const long double x = a.log_value;
  const long double y = b.log_value;
  return x < y ? -1 : (x > y ? 1 : 0);
}

Argmin argmin_by(const std::vector<SweepRow>& rows, bool use_mse) {
  require(!rows.empty(), "n has no divisor k >= 2");
  Argmin best;
  for (const SweepRow& row : rows) {
    const PrecisionValue& v = use_mse ? row.mse_exact : row.cov_exact;
    const int c = best.k_star.empty() ? -1 : compare(v, best.value);
    if (c < 0) {
      best.k_star = {row.k};
      best.value = v;
    } else if (c == 0) {
      best.k_star.push_back(row.k);
    }
  }
  return best;
}

PrecisionValue covariance(std::int64_t n, std::int64_t m, PrecisionMode mode) {
  return exact_fold_covariance(CovarianceQuery{n, m, mode});
}

}  // namespace

std::vector<std::int64_t> divisors(std::int64_t n, std::int64_t lo) {
  require(n >= 1, "n must be positive");
  std::vector<std::int64_t> small, large;
  for (std::int64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    small.push_back(d);
    if (d != n / d) large.push_back(n / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  std::erase_if(small, [lo](std::int64_t d) { return d < lo; });
  return small;
}

PrecisionMode default_mode(std::int64_t n) {
  return n <= ExactLimits{}.exact_n_cap ? PrecisionMode::ExactRational : PrecisionMode::LogSpaceFloat;
}

std::vector<SweepRow> sweep(std::int64_t n, PrecisionMode mode, unsigned workers) {
  require(n >= 2, "n must be at least 2");
  const std::vector<std::int64_t> ks = divisors(n, 2);
  std::vector<SweepRow> rows(ks.size());
  if (workers == 0) workers = worker_count();
  parallel_chunks(ks.size(), workers, [&](std::size_t begin, std::size_t end, unsigned) {
    for (std::size_t i = begin; i < end; ++i) {
      SweepRow& row = rows[i];
      row.n = n;
      row.k = ks[i];
      row.m = n / ks[i];
      row.mse_holdout = ExactRational(1, 4 * n);
      row.cov_exact = covariance(n, row.m, mode);
      const ExactRational shrink(row.k - 1, row.k);
      if (row.cov_exact.rational) {
        row.mse_exact = PrecisionValue::from_rational(shrink * *row.cov_exact.rational + row.mse_holdout);
      } else {
        const long double mse = static_cast<long double>(row.k - 1) / static_cast<long double>(row.k) *
                                    value_of(row.cov_exact) +
                                1.0L / (4.0L * static_cast<long double>(n));
        row.mse_exact = PrecisionValue::from_log(std::log(mse));
      }
      if (row.m >= 2) {
        row.cov_leading = leading_term(n, row.m);
        row.rel_err_leading = static_cast<double>(value_of(row.cov_exact) / *row.cov_leading - 1.0L);
      }
    }
  });
  return rows;
}

Argmin argmin_mse(std::int64_t n, std::optional<PrecisionMode> mode) {
  require(n >= 2 && n % 2 == 0, "n must be even");
  return argmin_by(sweep(n, mode.value_or(default_mode(n))), true);
}

Argmin argmin_cov(std::int64_t n, std::optional<PrecisionMode> mode) {
  require(n >= 3 && n % 3 == 0, "n must be a multiple of 3");
  return argmin_by(sweep(n, mode.value_or(default_mode(n))), false);
}

double gap_ratio(std::int64_t n, std::optional<PrecisionMode> mode) {
  const Argmin best = argmin_mse(n, mode);
  return static_cast<double>(value_of(best.value) * 4.0L * static_cast<long double>(n));
}

MonotonicityResult monotonicity_check(std::int64_t n, std::int64_t threshold, std::optional<PrecisionMode> mode) {
  require(n >= 2, "n must be at least 2");
  const PrecisionMode pm = mode.value_or(default_mode(n));
  MonotonicityResult result;
  result.asserted = n >= threshold;
  std::vector<std::int64_t> ms = divisors(n);
  std::erase_if(ms, [n](std::int64_t m) { return 3 * m > n; });
  std::vector<PrecisionValue> covs(ms.size());
  parallel_chunks(ms.size(), worker_count(), [&](std::size_t begin, std::size_t end, unsigned) {
    for (std::size_t i = begin; i < end; ++i) covs[i] = covariance(n, ms[i], pm);
  });
  for (std::size_t i = 1; i < ms.size(); ++i) {
    if (compare(covs[i - 1], covs[i]) <= 0) {
      result.holds = false;
      result.first_violation = std::make_pair(ms[i - 1], ms[i]);
      return result;
    }
  }
  if (n % 6 == 0 && compare(covs.back(), covariance(n, n / 2, pm)) >= 0) {
    result.holds = false;
    result.first_violation = std::make_pair(n / 3, n / 2);
  }
  return result;
}

std::vector<MinimaxRow> minimax_table(const std::vector<std::int64_t>& n_list) {
  std::vector<MinimaxRow> table;
  table.reserve(n_list.size());
  for (const std::int64_t n : n_list) {
    require(n >= 2, "n must be at least 2");
    const Argmin best = argmin_by(sweep(n, default_mode(n)), true);
    MinimaxRow row;
    row.n = n;
    row.k_star = best.k_star;
    row.min_mse = best.value;
    row.mse_times_n = static_cast<double>(value_of(best.value) * static_cast<long double>(n));
    row.normalized = row.mse_times_n / std::sqrt(static_cast<double>(best.k_star.front()));
    table.push_back(std::move(row));
  }
  return table;
}

std::string format_real(double value) {
  std::ostringstream os;
  os << std::setprecision(12) << value;
  return os.str();
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "n,k,m,cov_exact,mse_exact,cov_leading,rel_err_leading,mse_holdout\n";
  for (const SweepRow& row : rows) {
    out << row.n << ',' << row.k << ',' << row.m << ',' << row.cov_exact.to_string() << ','
        << row.mse_exact.to_string() << ',' << (row.cov_leading ? format_real(*row.cov_leading) : "") << ','
        << (row.rel_err_leading ? format_real(*row.rel_err_leading) : "") << ',' << row.mse_holdout.to_string()
        << '\n';
  }
}

}  // namespace cvlab
