#include "cvlab/sim.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "cvlab/error.hpp"
#include "cvlab/exact.hpp"
#include "cvlab/log_space.hpp"
#include "cvlab/parallel.hpp"

namespace cvlab {

namespace {

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

struct Draw {
  double x;
  int y;
};

Draw draw(const DataSpec& data, SplitMix64& rng) {
  if (data.kind == DataKind::PointMassRandomLabel) return {0.0, rng.bernoulli(data.q) ? 1 : 0};
  const double x = rng.uniform();
  return {x, x > 0.5 ? 1 : 0};
}

// Closed-form population risk of h.
double population_risk(const DataSpec& data, const Hypothesis& h) {
  if (data.kind == DataKind::PointMassRandomLabel) {
    switch (h.kind) {
      case Hypothesis::Kind::Zero: return data.q;
      case Hypothesis::Kind::One: return 1.0 - data.q;
      case Hypothesis::Kind::Interval: break;
    }
    throw InvalidArgument("interval hypothesis requires uniform threshold data");
  }
  if (h.kind == Hypothesis::Kind::Interval) return h.p;
  return 0.5;
}

void validate(const DataSpec& data, const AlgorithmSpec& algo, std::int64_t trials) {
  require(data.n >= 1, "n must be positive");
  require(data.q >= 0.0 && data.q <= 1.0, "q must lie in [0, 1]");
  require(trials >= 100, "trials must be at least 100");
  require(!(algo.kind == AlgorithmKind::AnticorrInterval && data.kind == DataKind::PointMassRandomLabel),
          "anticorr requires uniform threshold data");
}

SimEstimate summarize(const std::vector<double>& values, std::uint64_t seed) {
  SimEstimate est;
  est.trials = static_cast<std::int64_t>(values.size());
  est.seed = seed;
  const double count = static_cast<double>(values.size());
  est.mean = pairwise_sum(values) / count;
  std::vector<double> dev(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double d = values[i] - est.mean;
    dev[i] = d * d;
  }
  const double var = values.size() > 1 ? pairwise_sum(dev) / (count - 1) : 0.0;
  est.std_error = std::sqrt(var / count);
  return est;
}

template <typename Trial>
void run_trials(std::int64_t trials, unsigned workers, Trial&& trial) {
  if (workers == 0) workers = worker_count();
  parallel_chunks(static_cast<std::size_t>(trials), workers, [&](std::size_t begin, std::size_t end, unsigned) {
    for (std::size_t t = begin; t < end; ++t) trial(t);
  });
}

// Integer weights C(r, x) a^x (b - a)^(r - x); the masses of Bin(r, a/b) times b^r.
std::vector<mpz_class> binomial_weights(std::int64_t r, const mpz_class& a, const mpz_class& b) {
  std::vector<mpz_class> w(static_cast<std::size_t>(r + 1));
  const mpz_class c = b - a;
  std::vector<mpz_class> pa(w.size()), pc(w.size());
  pa[0] = 1;
  pc[0] = 1;
  for (std::size_t i = 1; i < w.size(); ++i) {
    pa[i] = pa[i - 1] * a;
    pc[i] = pc[i - 1] * c;
  }
  mpz_class coeff = 1;
  for (std::int64_t x = 0; x <= r; ++x) {
    w[static_cast<std::size_t>(x)] = coeff * pa[static_cast<std::size_t>(x)] * pc[static_cast<std::size_t>(r - x)];
    coeff = coeff * (r - x) / (x + 1);
  }
  return w;
}

std::int64_t floor_div2(std::int64_t v) { return v >= 0 ? v / 2 : -((-v + 1) / 2); }

}  // namespace

DataSpec DataSpec::point_mass(std::int64_t n, double q) { return {DataKind::PointMassRandomLabel, q, n}; }

DataSpec DataSpec::uniform_threshold(std::int64_t n) { return {DataKind::UniformThreshold, 0.5, n}; }

std::string to_string(DataKind kind) {
  return kind == DataKind::PointMassRandomLabel ? "point_mass" : "uniform_threshold";
}

SplitMix64 SplitMix64::for_trial(std::uint64_t seed, std::uint64_t trial) {
  return SplitMix64(mix64(seed + mix64(trial + kGamma)));
}

std::uint64_t SplitMix64::next() {
  state_ += kGamma;
  return mix64(state_);
}

double SplitMix64::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

CvSimulation simulate_cv(const DataSpec& data, const AlgorithmSpec& algo, std::int64_t k, std::int64_t trials,
                         std::uint64_t seed, const SimOptions& options) {
  const FoldScheme scheme(data.n, k);
  validate(data, algo, trials);
  const std::int64_t n = data.n;
  const std::int64_t m = scheme.m();

  std::vector<double> sq(static_cast<std::size_t>(trials));
  std::vector<double> est(static_cast<std::size_t>(trials));
  run_trials(trials, options.workers, [&](std::size_t t) {
    SplitMix64 rng = SplitMix64::for_trial(seed, t);
    std::vector<Draw> sample(static_cast<std::size_t>(n));
    std::vector<std::int64_t> fold_ones(static_cast<std::size_t>(k), 0);
    std::int64_t ones = 0;
    for (std::int64_t i = 0; i < n; ++i) {
      sample[static_cast<std::size_t>(i)] = draw(data, rng);
      const int y = sample[static_cast<std::size_t>(i)].y;
      fold_ones[static_cast<std::size_t>(i / m)] += y;
      ones += y;
    }
    std::int64_t errors = 0;
    for (std::int64_t f = 0; f < k; ++f) {
      const Hypothesis h = train(algo, ones - fold_ones[static_cast<std::size_t>(f)], n - m, n);
      for (std::int64_t i = f * m; i < (f + 1) * m; ++i) {
        const Draw& d = sample[static_cast<std::size_t>(i)];
        errors += h.predict(d.x) != d.y ? 1 : 0;
      }
    }
    const double cv = static_cast<double>(errors) / static_cast<double>(n);
    const double risk = population_risk(data, train(algo, ones, n, n));
    est[t] = cv;
    sq[t] = (cv - risk) * (cv - risk);
  });
  return {summarize(sq, seed), summarize(est, seed)};
}

SimEstimate run_cv_mse(const DataSpec& data, const AlgorithmSpec& algo, std::int64_t k, std::int64_t trials,
                       std::uint64_t seed, const SimOptions& options) {
  return simulate_cv(data, algo, k, trials, seed, options).mse;
}

ExactRational exact_hypothesis_stability(std::int64_t n, std::int64_t m, TiePolicy tie, const ExactRational& q) {
  require(m >= 1 && m < n, "m must satisfy 1 <= m < n");
  require(q.sign() >= 0 && q <= ExactRational(1), "q must lie in [0, 1]");
  const mpz_class& a = q.numerator();
  const mpz_class& b = q.denominator();
  const std::int64_t rest = n - m;
  const auto w_rest = binomial_weights(rest, a, b);
  const auto w_fold = binomial_weights(m, a, b);
  // tail[x] = sum of w_fold over [x, m]
  std::vector<mpz_class> tail(static_cast<std::size_t>(m + 2));
  tail[static_cast<std::size_t>(m + 1)] = 0;
  for (std::int64_t x = m; x >= 0; --x) {
    tail[static_cast<std::size_t>(x)] = tail[static_cast<std::size_t>(x + 1)] + w_fold[static_cast<std::size_t>(x)];
  }
  const mpz_class& all = tail[0];
  mpz_class total = 0;
  for (std::int64_t y = 0; y <= rest; ++y) {
    // smallest fold count x with Maj(S^n) = h1
    std::int64_t t = tie == TiePolicy::ToZero ? floor_div2(n - 2 * y) + 1 : -floor_div2(2 * y - n);
    t = std::clamp<std::int64_t>(t, 0, m + 1);
    const mpz_class& upper = tail[static_cast<std::size_t>(t)];
    const bool sub_one = majority_predicts_one(y, rest, tie);
    total += w_rest[static_cast<std::size_t>(y)] * (sub_one ? mpz_class(all - upper) : upper);
  }
  mpz_class den;
  mpz_pow_ui(den.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(n));
  return ExactRational(total, den);
}

ExactRational exact_majority_loss_stability(std::int64_t n, std::int64_t m, TiePolicy tie, const ExactRational& q) {
  return abs(ExactRational(1) - ExactRational(2) * q) * exact_hypothesis_stability(n, m, tie, q);
}

AnticorrStability loss_stability_anticorr(std::int64_t n) {
  require(n >= 2, "n must be at least 2");
  require(n % 2 == 0, "n must be even");
  mpz_class total = 0;
  for (std::int64_t y = 0; y <= n; ++y) {
    const std::int64_t dev = 2 * y - n;
    total += binomial_integer(n, y) * (dev < 0 ? -dev : dev);
  }
  // |y/n - 1/2| = |2y - n| / (2n)
  mpz_class den = 1;
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<mp_bitcnt_t>(n));
  den *= 2 * n;
  return {ExactRational(total, den), ExactRational(0)};
}

SimEstimate estimate_loss_stability(const DataSpec& data, const AlgorithmSpec& algo, std::int64_t n, std::int64_t m,
                                    std::int64_t trials, std::uint64_t seed, const SimOptions& options) {
  require(m >= 1 && m < n, "m must satisfy 1 <= m < n");
  DataSpec sized = data;
  sized.n = n;
  validate(sized, algo, trials);
  std::vector<double> gap(static_cast<std::size_t>(trials));
  run_trials(trials, options.workers, [&](std::size_t t) {
    SplitMix64 rng = SplitMix64::for_trial(seed, t);
    std::int64_t sub_ones = 0;
    std::int64_t extra_ones = 0;
    for (std::int64_t i = 0; i < n - m; ++i) sub_ones += draw(sized, rng).y;
    for (std::int64_t i = 0; i < m; ++i) extra_ones += draw(sized, rng).y;
    const double full = population_risk(sized, train(algo, sub_ones + extra_ones, n, n));
    const double sub = population_risk(sized, train(algo, sub_ones, n - m, n));
    gap[t] = std::fabs(full - sub);
  });
  return summarize(gap, seed);
}

}  // namespace cvlab
