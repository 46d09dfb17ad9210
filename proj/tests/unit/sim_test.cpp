#include <gtest/gtest.h>

#include <cmath>

#include "cvlab/error.hpp"
#include "cvlab/exact.hpp"
#include "cvlab/sim.hpp"

using cvlab::AlgorithmSpec;
using cvlab::DataSpec;
using cvlab::ExactRational;
using cvlab::TiePolicy;

namespace {

void expect_within_3se(const cvlab::SimEstimate& e, double target) {
  EXPECT_LE(std::abs(e.mean - target), 3 * e.std_error) << "mean " << e.mean << " se " << e.std_error;
}

}  // namespace

TEST(SplitMix64, StreamsAreReproducible) {
  auto a = cvlab::SplitMix64::for_trial(7, 3);
  auto b = cvlab::SplitMix64::for_trial(7, 3);
  auto c = cvlab::SplitMix64::for_trial(7, 4);
  for (int i = 0; i < 10; ++i) {
    const auto x = a.next();
    EXPECT_EQ(x, b.next());
    EXPECT_NE(x, c.next());
  }
  auto u = cvlab::SplitMix64(1);
  for (int i = 0; i < 1000; ++i) {
    const double v = u.uniform();
    EXPECT_GE(v, 0.0);
    EXPECT_LT(v, 1.0);
  }
}

TEST(RunCvMse, MajorityMatchesExact) {
  const auto e = cvlab::run_cv_mse(DataSpec::point_mass(12), AlgorithmSpec::majority(), 3, 100'000, 11);
  expect_within_3se(e, ExactRational(446, 12288).to_double());
  EXPECT_EQ(e.trials, 100'000);
  EXPECT_EQ(e.seed, 11u);
}

TEST(RunCvMse, ConstantMatchesBaseline) {
  const auto e = cvlab::run_cv_mse(DataSpec::point_mass(10), AlgorithmSpec::constant(0), 5, 100'000, 5);
  expect_within_3se(e, 1.0 / 40);
}

TEST(RunCvMse, ConstantWithBiasedLabels) {
  const auto e = cvlab::run_cv_mse(DataSpec::point_mass(20, 0.3), AlgorithmSpec::constant(1), 4, 50'000, 9);
  expect_within_3se(e, 0.3 * 0.7 / 20);
}

TEST(RunCvMse, AnticorrIsExactlyZero) {
  for (const std::int64_t k : {2, 4, 8}) {
    const auto e = cvlab::run_cv_mse(DataSpec::uniform_threshold(8), AlgorithmSpec::anticorr_interval(), k, 1000, 3);
    EXPECT_EQ(e.mean, 0.0);
    EXPECT_EQ(e.std_error, 0.0);
  }
}

TEST(RunCvMse, MajorityOnThresholdData) {
  // labels are fair coins, so this is the point-mass case again
  const auto e = cvlab::run_cv_mse(DataSpec::uniform_threshold(6), AlgorithmSpec::majority(), 3, 100'000, 21);
  expect_within_3se(e, 7.0 / 96);
}

TEST(RunCvMse, Deterministic) {
  const auto data = DataSpec::point_mass(12);
  cvlab::SimOptions one;
  one.workers = 1;
  cvlab::SimOptions four;
  four.workers = 4;
  const auto a = cvlab::run_cv_mse(data, AlgorithmSpec::majority(), 4, 5000, 99, one);
  const auto b = cvlab::run_cv_mse(data, AlgorithmSpec::majority(), 4, 5000, 99, four);
  const auto c = cvlab::run_cv_mse(data, AlgorithmSpec::majority(), 4, 5000, 99, one);
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_EQ(a.std_error, b.std_error);
  EXPECT_EQ(a.mean, c.mean);
  const auto d = cvlab::run_cv_mse(data, AlgorithmSpec::majority(), 4, 5000, 100, one);
  EXPECT_NE(a.mean, d.mean);
}

TEST(RunCvMse, EstimatorIsUnbiased) {
  const auto sim = cvlab::simulate_cv(DataSpec::point_mass(12), AlgorithmSpec::majority(), 3, 100'000, 4);
  EXPECT_LE(std::abs(sim.estimator.mean - 0.5), 4 * sim.estimator.std_error);
}

TEST(RunCvMse, Rejections) {
  EXPECT_THROW(cvlab::run_cv_mse(DataSpec::point_mass(7), AlgorithmSpec::majority(), 2, 1000, 1),
               cvlab::InvalidArgument);
  EXPECT_THROW(cvlab::run_cv_mse(DataSpec::point_mass(8), AlgorithmSpec::majority(), 2, 99, 1),
               cvlab::InvalidArgument);
  EXPECT_THROW(cvlab::run_cv_mse(DataSpec::point_mass(8), AlgorithmSpec::anticorr_interval(), 2, 1000, 1),
               cvlab::InvalidArgument);
  EXPECT_THROW(cvlab::run_cv_mse(DataSpec::point_mass(8, 1.5), AlgorithmSpec::majority(), 2, 1000, 1),
               cvlab::InvalidArgument);
}

TEST(HypothesisStability, KnownValues) {
  EXPECT_EQ(cvlab::exact_hypothesis_stability(2, 1, TiePolicy::ToZero), ExactRational(1, 4));
  const double at1 = cvlab::exact_hypothesis_stability(100, 1, TiePolicy::ToZero).to_double();
  EXPECT_GE(at1 * 10, 0.2);
  EXPECT_LE(at1 * 10, 2.0);
  const auto s1 = cvlab::exact_hypothesis_stability(100, 1, TiePolicy::ToZero);
  const auto s10 = cvlab::exact_hypothesis_stability(100, 10, TiePolicy::ToZero);
  const auto s50 = cvlab::exact_hypothesis_stability(100, 50, TiePolicy::ToZero);
  EXPECT_GT(s50, s10);
  EXPECT_GT(s10, s1);
  EXPECT_THROW(cvlab::exact_hypothesis_stability(5, 5, TiePolicy::ToZero), cvlab::InvalidArgument);
}

TEST(HypothesisStability, MatchesEnumeration) {
  // brute force over all label vectors of length n
  for (const auto tie : {TiePolicy::ToZero, TiePolicy::ToOne}) {
    for (const auto [n, m] : {std::pair{5, 2}, {8, 3}, {10, 5}, {9, 1}}) {
      std::int64_t flips = 0;
      for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
        const int sub = __builtin_popcount(bits & ((1u << (n - m)) - 1));
        const int all = __builtin_popcount(bits);
        flips += cvlab::majority_predicts_one(sub, n - m, tie) != cvlab::majority_predicts_one(all, n, tie);
      }
      EXPECT_EQ(cvlab::exact_hypothesis_stability(n, m, tie), ExactRational(flips, std::int64_t{1} << n));
    }
  }
}

TEST(HypothesisStability, BiasedLabels) {
  // n = 2, m = 1, q: flips when (y1, y2) = (1, 0) under ties to h0
  const ExactRational q(2, 5);
  EXPECT_EQ(cvlab::exact_hypothesis_stability(2, 1, TiePolicy::ToZero, q), q * (ExactRational(1) - q));
  EXPECT_EQ(cvlab::exact_majority_loss_stability(2, 1, TiePolicy::ToZero, q),
            ExactRational(1, 5) * q * (ExactRational(1) - q));
}

TEST(AnticorrStability, Values) {
  const auto two = cvlab::loss_stability_anticorr(2);
  EXPECT_EQ(two.beta, ExactRational(1, 4));
  EXPECT_TRUE(two.mse.is_zero());
  EXPECT_EQ(cvlab::loss_stability_anticorr(4).beta, ExactRational(3, 16));
  EXPECT_THROW(cvlab::loss_stability_anticorr(5), cvlab::InvalidArgument);
  for (const std::int64_t n : {64, 256, 1024}) {
    const double scaled = cvlab::loss_stability_anticorr(n).beta.to_double() * std::sqrt(static_cast<double>(n));
    EXPECT_NEAR(scaled, std::sqrt(1 / (2 * 3.141592653589793)), 0.01) << n;
  }
}

TEST(EstimateLossStability, PointMass) {
  const auto fair = cvlab::estimate_loss_stability(DataSpec::point_mass(2), AlgorithmSpec::majority(), 2, 1, 100'000, 1);
  EXPECT_EQ(fair.mean, 0.0);
  const ExactRational q(2, 5);
  const auto small = cvlab::estimate_loss_stability(DataSpec::point_mass(2, 0.4), AlgorithmSpec::majority(), 2, 1,
                                                    100'000, 2);
  expect_within_3se(small, cvlab::exact_majority_loss_stability(2, 1, TiePolicy::ToZero, q).to_double());
  const auto big = cvlab::estimate_loss_stability(DataSpec::point_mass(20, 0.4), AlgorithmSpec::majority(), 20, 5,
                                                  100'000, 3);
  expect_within_3se(big, cvlab::exact_majority_loss_stability(20, 5, TiePolicy::ToZero, q).to_double());
}

TEST(EstimateLossStability, Anticorr) {
  const auto e = cvlab::estimate_loss_stability(DataSpec::uniform_threshold(2), AlgorithmSpec::anticorr_interval(),
                                                2, 1, 10'000, 8);
  expect_within_3se(e, 0.25);
  EXPECT_THROW(cvlab::estimate_loss_stability(DataSpec::point_mass(2), AlgorithmSpec::majority(), 2, 2, 1000, 1),
               cvlab::InvalidArgument);
}

TEST(Hypothesis, IntervalPrediction) {
  const auto h = cvlab::train(AlgorithmSpec::anticorr_interval(), 2, 4, 4);
  EXPECT_EQ(h.kind, cvlab::Hypothesis::Kind::Interval);
  EXPECT_EQ(h.predict(0.5), 1);   // inside (1/4, 3/4)
  EXPECT_EQ(h.predict(0.8), 0);
  EXPECT_EQ(cvlab::train(AlgorithmSpec::anticorr_interval(), 2, 2, 4).kind, cvlab::Hypothesis::Kind::Zero);
  EXPECT_FALSE(cvlab::majority_predicts_one(2, 4, TiePolicy::ToZero));
  EXPECT_TRUE(cvlab::majority_predicts_one(2, 4, TiePolicy::ToOne));
}
