#include "cvlab/log_space.hpp"

#include <cmath>
#include <numbers>

namespace cvlab {

namespace {

constexpr long double kHalfLog2Pi = 0.918938533204672741780329736405617639861L;

long double stirling_main(std::uint64_t k) {
  const auto x = static_cast<long double>(k);
  return x * std::log(x) - x + 0.5L * std::log(x) + kHalfLog2Pi;
}

// x ln(r / x) with y = r - x. The ratio form is exact enough while x <= y;
// past that, 1 - y/r would cancel, so go through log1p.
long double x_log_ratio(long double x, long double y, long double r) {
  if (x <= y) return x * std::log(r / x);
  return -x * std::log1p(-y / r);
}

}  // namespace

LogFactorialTable::LogFactorialTable(std::uint64_t cap) : table_(cap + 1) {
  CompensatedSum<long double> acc;
  table_[0] = 0;
  for (std::uint64_t k = 1; k <= cap; ++k) {
    acc.add(std::log(static_cast<long double>(k)));
    table_[k] = acc.value();
  }
}

const LogFactorialTable& LogFactorialTable::shared() {
  static const LogFactorialTable table;
  return table;
}

long double LogFactorialTable::stirling_remainder(std::uint64_t k) const {
  if (k <= cap()) return table_[k] - stirling_main(k);
  // 1/(12k) - 1/(360k^3) + 1/(1260k^5) - 1/(1680k^7); k > cap >= 2^10 makes
  // the truncation error far below 1e-20.
  const long double inv = 1.0L / static_cast<long double>(k);
  const long double inv2 = inv * inv;
  return inv * (1.0L / 12 - inv2 * (1.0L / 360 - inv2 * (1.0L / 1260 - inv2 / 1680)));
}

long double LogFactorialTable::log_factorial(std::uint64_t k) const {
  if (k <= cap()) return table_[k];
  return stirling_main(k) + stirling_remainder(k);
}

long double LogFactorialTable::log_binomial(std::uint64_t r, std::int64_t t) const {
  if (t < 0 || static_cast<std::uint64_t>(t) > r) {
    return -std::numeric_limits<long double>::infinity();
  }
  const auto lo = static_cast<std::uint64_t>(t);
  const std::uint64_t hi = r - lo;
  if (lo == 0 || hi == 0) return 0;
  if (r <= cap()) return table_[r] - table_[lo] - table_[hi];

  // Subtracting three huge ln-factorials loses ~|ln r!| * eps. Expanding each
  // through Stirling cancels the large parts analytically:
  //   ln C = t ln(r/t) + s ln(r/s) + ln(r / (2 pi t s)) / 2 + d(r) - d(t) - d(s)
  // with s = r - t and d the Stirling remainder.
  const auto rr = static_cast<long double>(r);
  const auto tt = static_cast<long double>(lo);
  const auto ss = static_cast<long double>(hi);
  const long double main = x_log_ratio(tt, ss, rr) + x_log_ratio(ss, tt, rr) +
                           0.5L * (std::log(rr / (tt * ss)) - 2 * kHalfLog2Pi);
  return main + stirling_remainder(r) - stirling_remainder(lo) - stirling_remainder(hi);
}

long double log_binomial(std::uint64_t r, std::int64_t t) {
  return LogFactorialTable::shared().log_binomial(r, t);
}

double pairwise_sum(std::span<const double> values) {
  constexpr std::size_t kLeaf = 32;
  if (values.size() <= kLeaf) {
    double s = 0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace cvlab
