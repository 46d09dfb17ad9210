#include "cvlab/oracle.hpp"

#include <bit>
#include <vector>

#include "cvlab/error.hpp"
#include "cvlab/parallel.hpp"

namespace cvlab {

namespace {

__extension__ using u128 = unsigned __int128;

// Exact integer moments of the fold error counts over a slice of label vectors.
struct BitstringSums {
  u128 e1 = 0, e2 = 0, e1_sq = 0, e1e2 = 0, total = 0, dev_sq = 0;

  void merge(const BitstringSums& o) {
    e1 += o.e1;
    e2 += o.e2;
    e1_sq += o.e1_sq;
    e1e2 += o.e1e2;
    total += o.total;
    dev_sq += o.dev_sq;
  }
};

mpz_class to_mpz(u128 v) {
  const auto hi = static_cast<std::uint64_t>(v >> 64);
  const auto lo = static_cast<std::uint64_t>(v);
  mpz_class out(std::to_string(hi));
  out <<= 64;
  mpz_class low;
  mpz_import(low.get_mpz_t(), 1, 1, sizeof(lo), 0, 0, &lo);
  return out + low;
}

std::int64_t floor_div2(std::int64_t v) { return v >= 0 ? v / 2 : -((-v + 1) / 2); }

}  // namespace

OracleResult bitstring_cv_oracle(const FoldScheme& scheme, const AlgorithmSpec& algo, const OracleConfig& config) {
  const std::int64_t n = scheme.n(), k = scheme.k(), m = scheme.m();
  require(n <= config.brute_force_cap, "n exceeds the brute-force cap (" + std::to_string(config.brute_force_cap) + ")");
  require(n <= 40, "bitstring oracle supports n <= 40");
  require(algo.label_count_determined(), "bitstring oracle needs a rule that ignores features");

  const std::uint64_t vectors = std::uint64_t{1} << n;
  const std::uint64_t fold_mask = (std::uint64_t{1} << m) - 1;
  const unsigned workers = config.workers == 0 ? worker_count() : config.workers;
  std::vector<BitstringSums> partial(workers);

  parallel_chunks(vectors, workers, [&](std::size_t begin, std::size_t end, unsigned chunk) {
    BitstringSums acc;
    for (std::uint64_t v = begin; v < end; ++v) {
      const std::int64_t ones = std::popcount(v);
      std::int64_t fold_errors[2] = {0, 0};
      std::int64_t total_errors = 0;
      for (std::int64_t i = 0; i < k; ++i) {
        const std::int64_t fold_ones = std::popcount((v >> (i * m)) & fold_mask);
        const Hypothesis h = train(algo, ones - fold_ones, n - m, n);
        const std::int64_t errors = h.kind == Hypothesis::Kind::One ? m - fold_ones : fold_ones;
        if (i < 2) fold_errors[i] = errors;
        total_errors += errors;
      }
      // Risk of either constant hypothesis is 1/2: (E/n - 1/2)^2 = (2E - n)^2 / (4 n^2).
      const std::int64_t dev = 2 * total_errors - n;
      acc.e1 += static_cast<std::uint64_t>(fold_errors[0]);
      acc.e2 += static_cast<std::uint64_t>(fold_errors[1]);
      acc.e1_sq += static_cast<std::uint64_t>(fold_errors[0] * fold_errors[0]);
      acc.e1e2 += static_cast<std::uint64_t>(fold_errors[0] * fold_errors[1]);
      acc.total += static_cast<std::uint64_t>(total_errors);
      acc.dev_sq += static_cast<std::uint64_t>(dev * dev);
    }
    partial[chunk] = acc;
  });

  BitstringSums sums;
  for (const auto& p : partial) sums.merge(p);

  const auto bits = static_cast<unsigned long>(n);
  const ExactRational mm(m * m);
  const ExactRational mean1 = ExactRational::dyadic(to_mpz(sums.e1), bits) / ExactRational(m);
  const ExactRational mean2 = ExactRational::dyadic(to_mpz(sums.e2), bits) / ExactRational(m);
  OracleResult out;
  out.fold_variance = ExactRational::dyadic(to_mpz(sums.e1_sq), bits) / mm - mean1 * mean1;
  out.fold_covariance = ExactRational::dyadic(to_mpz(sums.e1e2), bits) / mm - mean1 * mean2;
  out.estimator_mean = ExactRational::dyadic(to_mpz(sums.total), bits) / ExactRational(n);
  out.mse = ExactRational::dyadic(to_mpz(sums.dev_sq), bits) / ExactRational(4 * n * n);
  return out;
}

OracleResult count_cv_oracle(const FoldScheme& scheme) {
  const std::int64_t n = scheme.n(), k = scheme.k(), m = scheme.m();
  require(m <= 512, "count oracle requires m <= 512");
  const std::int64_t shared = n - 2 * m;
  const std::int64_t train_size = n - m;

  std::vector<mpz_class> fold_binom(static_cast<std::size_t>(m + 1));
  for (std::int64_t x = 0; x <= m; ++x) fold_binom[static_cast<std::size_t>(x)] = binomial_integer(m, x);
  // prefix[a] = sum_{y < a} C(N, y)
  std::vector<mpz_class> prefix(static_cast<std::size_t>(shared + 2), 0);
  for (std::int64_t y = 0; y <= shared; ++y) {
    prefix[static_cast<std::size_t>(y + 1)] = prefix[static_cast<std::size_t>(y)] + binomial_integer(shared, y);
  }
  auto clamp = [&](std::int64_t y) { return std::min<std::int64_t>(std::max<std::int64_t>(y, 0), shared + 1); };
  auto mass = [&](std::int64_t lo, std::int64_t hi) {  // sum_{lo <= y < hi} C(N, y)
    lo = clamp(lo);
    hi = clamp(hi);
    return hi > lo ? mpz_class(prefix[static_cast<std::size_t>(hi)] - prefix[static_cast<std::size_t>(lo)])
                   : mpz_class(0);
  };
  // Smallest y with 2(other + y) > n - m, i.e. the complement votes h1.
  auto flip_point = [&](std::int64_t other) { return floor_div2(train_size - 2 * other) + 1; };
  auto fold_error = [&](std::int64_t x, bool predicts_one) { return predicts_one ? m - x : x; };

  mpz_class joint = 0;  // sum w e1 e2
  for (std::int64_t x1 = 0; x1 <= m; ++x1) {
    const std::int64_t t2 = flip_point(x1);  // fold 2's complement holds x1 + y ones
    for (std::int64_t x2 = 0; x2 <= m; ++x2) {
      const std::int64_t t1 = flip_point(x2);
      const mpz_class w = fold_binom[static_cast<std::size_t>(x1)] * fold_binom[static_cast<std::size_t>(x2)];
      mpz_class cell = 0;
      for (int p1 = 0; p1 < 2; ++p1) {
        for (int p2 = 0; p2 < 2; ++p2) {
          const std::int64_t lo = std::max(p1 ? t1 : 0, p2 ? t2 : 0);
          const std::int64_t hi = std::min(p1 ? shared + 1 : t1, p2 ? shared + 1 : t2);
          const std::int64_t e = fold_error(x1, p1) * fold_error(x2, p2);
          if (e != 0) cell += mass(lo, hi) * e;
        }
      }
      joint += w * cell;
    }
  }

  // Single-fold moments: x1 against the complement count r ~ Bin(n - m, 1/2).
  mpz_class first = 0, second = 0;
  std::vector<mpz_class> rest_prefix(static_cast<std::size_t>(train_size + 2), 0);
  for (std::int64_t r = 0; r <= train_size; ++r) {
    rest_prefix[static_cast<std::size_t>(r + 1)] =
        rest_prefix[static_cast<std::size_t>(r)] + binomial_integer(train_size, r);
  }
  const std::int64_t flip = floor_div2(train_size) + 1;  // r >= flip votes h1
  const mpz_class votes_zero = rest_prefix[static_cast<std::size_t>(std::min(flip, train_size + 1))];
  const mpz_class votes_one = rest_prefix[static_cast<std::size_t>(train_size + 1)] - votes_zero;
  for (std::int64_t x = 0; x <= m; ++x) {
    const mpz_class& w = fold_binom[static_cast<std::size_t>(x)];
    first += w * (votes_zero * x + votes_one * (m - x));
    second += w * (votes_zero * (x * x) + votes_one * ((m - x) * (m - x)));
  }

  const auto bits = static_cast<unsigned long>(n);
  const ExactRational mean = ExactRational::dyadic(first, bits) / ExactRational(m);
  OracleResult out;
  out.estimator_mean = mean;
  out.fold_variance = ExactRational::dyadic(second, bits) / ExactRational(m * m) - mean * mean;
  out.fold_covariance = ExactRational::dyadic(joint, bits) / ExactRational(m * m) - mean * mean;
  out.mse = out.fold_variance / ExactRational(k) + ExactRational(k - 1, k) * out.fold_covariance;
  return out;
}

FactorizationSides factorization_check(const FoldScheme& scheme) {
  const std::int64_t n = scheme.n(), m = scheme.m();
  const std::int64_t shared = n - 2 * m;
  FactorizationSides out;
  out.direct = count_cv_oracle(scheme).fold_covariance;

  // For each shared count y, Cov(X/m, 1{2X > n - m - 2y}) from the Bin(m, 1/2) mass.
  ExactRational expectation;
  const ExactRational fold_scale = ExactRational::dyadic(1, static_cast<unsigned long>(m));
  for (std::int64_t y = 0; y <= shared; ++y) {
    ExactRational joint, tail;
    for (std::int64_t x = 0; x <= m; ++x) {
      if (2 * x > n - m - 2 * y) {
        const ExactRational p = binomial(m, x) * fold_scale;
        joint += ExactRational(x, m) * p;
        tail += p;
      }
    }
    const ExactRational cov = joint - ExactRational(1, 2) * tail;
    expectation += ExactRational::dyadic(binomial_integer(shared, y), static_cast<unsigned long>(shared)) * cov * cov;
  }
  out.factored = ExactRational(4) * expectation;
  return out;
}

namespace {

// sum_y C(n, y) f(y) / 2^n with the binomial row built by recurrence.
template <typename Weight>
ExactRational binomial_expectation(std::int64_t n, Weight weight) {
  mpz_class c = 1, total = 0;
  for (std::int64_t y = 0; y <= n; ++y) {
    total += c * weight(y);
    c *= static_cast<unsigned long>(n - y);
    mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(y + 1));
  }
  return ExactRational::dyadic(total, static_cast<unsigned long>(n));
}

}  // namespace

ExactRational empirical_error_mse(std::int64_t n) {
  require(n >= 1, "n must be positive");
  // (min(Y, n-Y)/n - 1/2)^2 = (2 min(Y, n-Y) - n)^2 / (4 n^2)
  const ExactRational sum = binomial_expectation(n, [n](std::int64_t y) -> mpz_class {
    const std::int64_t d = 2 * std::min(y, n - y) - n;
    return mpz_class(d * d);
  });
  return sum / ExactRational(4 * n * n);
}

ExactRational holdout_mse(std::int64_t n) {
  require(n >= 1, "n must be positive");
  const ExactRational sum = binomial_expectation(n, [n](std::int64_t y) -> mpz_class {
    const std::int64_t d = n - 2 * y;
    return mpz_class(d * d);
  });
  return sum / ExactRational(4 * n * n);
}

}  // namespace cvlab
