#include <gtest/gtest.h>

#include "cvlab/error.hpp"
#include "cvlab/exact.hpp"
#include "cvlab/oracle.hpp"

using cvlab::AlgorithmSpec;
using cvlab::ExactRational;
using cvlab::FoldScheme;

TEST(BitstringOracle, KnownValues) {
  EXPECT_EQ(cvlab::bitstring_cv_oracle(FoldScheme(4, 2), AlgorithmSpec::majority()).mse, ExactRational(3, 32));
  EXPECT_EQ(cvlab::bitstring_cv_oracle(FoldScheme(2, 2), AlgorithmSpec::constant(0)).mse, ExactRational(1, 8));
  const auto r = cvlab::bitstring_cv_oracle(FoldScheme(6, 3), AlgorithmSpec::majority());
  EXPECT_EQ(r.mse, ExactRational(7, 96));
  EXPECT_EQ(r.fold_covariance, ExactRational(3, 64));
}

TEST(BitstringOracle, ConstantRuleMatchesBaseline) {
  // p(1-p)/n at p = 1/2
  for (const auto [n, k] : {std::pair{4, 2}, {6, 3}, {10, 5}, {12, 4}}) {
    const auto r = cvlab::bitstring_cv_oracle(FoldScheme(n, k), AlgorithmSpec::constant(1));
    EXPECT_EQ(r.mse, ExactRational(1, 4 * n));
    EXPECT_EQ(r.estimator_mean, ExactRational(1, 2));
  }
}

TEST(BitstringOracle, Invariants) {
  for (const std::int64_t k : {2, 3, 4, 6, 12}) {
    const auto r = cvlab::bitstring_cv_oracle(FoldScheme(12, k), AlgorithmSpec::majority());
    EXPECT_EQ(r.estimator_mean, ExactRational(1, 2));
    EXPECT_GE(r.fold_variance.sign(), 0);
    EXPECT_GE(r.mse.sign(), 0);
  }
}

TEST(BitstringOracle, WorkerCountDoesNotMatter) {
  cvlab::OracleConfig one;
  one.workers = 1;
  cvlab::OracleConfig three;
  three.workers = 3;
  const auto a = cvlab::bitstring_cv_oracle(FoldScheme(14, 7), AlgorithmSpec::majority(), one);
  const auto b = cvlab::bitstring_cv_oracle(FoldScheme(14, 7), AlgorithmSpec::majority(), three);
  EXPECT_EQ(a.mse, b.mse);
  EXPECT_EQ(a.fold_covariance, b.fold_covariance);
}

TEST(BitstringOracle, Rejections) {
  EXPECT_THROW(cvlab::bitstring_cv_oracle(FoldScheme(22, 2), AlgorithmSpec::majority()), cvlab::InvalidArgument);
  EXPECT_THROW(cvlab::bitstring_cv_oracle(FoldScheme(4, 2), AlgorithmSpec::anticorr_interval()),
               cvlab::InvalidArgument);
}

TEST(CountOracle, KnownValues) {
  EXPECT_EQ(cvlab::count_cv_oracle(FoldScheme(12, 3)).fold_covariance, ExactRational(95, 4096));
  EXPECT_EQ(cvlab::count_cv_oracle(FoldScheme(12, 2)).fold_covariance, ExactRational(25, 1024));
  EXPECT_EQ(cvlab::count_cv_oracle(FoldScheme(4, 4)).fold_covariance, ExactRational(1, 8));
}

TEST(CountOracle, AgreesWithBitstringAndFormula) {
  for (std::int64_t n = 2; n <= 16; ++n) {
    for (std::int64_t k = 2; k <= n; ++k) {
      if (n % k != 0) continue;
      const FoldScheme s(n, k);
      const auto brute = cvlab::bitstring_cv_oracle(s, AlgorithmSpec::majority());
      const auto counted = cvlab::count_cv_oracle(s);
      EXPECT_EQ(brute.mse, counted.mse) << n << "," << k;
      EXPECT_EQ(brute.fold_variance, counted.fold_variance) << n << "," << k;
      EXPECT_EQ(counted.mse, cvlab::exact_cv_mse(s)) << n << "," << k;
    }
  }
  // beyond the brute-force range
  EXPECT_EQ(cvlab::count_cv_oracle(FoldScheme(60, 5)).fold_covariance, cvlab::fold_covariance_rational(60, 12));
}

TEST(Factorization, BothSidesAgree) {
  const auto a = cvlab::factorization_check(FoldScheme(6, 3));
  EXPECT_EQ(a.direct, ExactRational(3, 64));
  EXPECT_EQ(a.factored, ExactRational(3, 64));
  const auto b = cvlab::factorization_check(FoldScheme(4, 2));
  EXPECT_EQ(b.direct, ExactRational(1, 16));
  EXPECT_EQ(b.factored, ExactRational(1, 16));
  const auto c = cvlab::factorization_check(FoldScheme(8, 4));
  EXPECT_EQ(c.direct, c.factored);
  EXPECT_EQ(c.direct, cvlab::fold_covariance_rational(8, 2));
}

TEST(Baselines, EmpiricalAndHoldout) {
  EXPECT_EQ(cvlab::empirical_error_mse(2), ExactRational(1, 8));
  EXPECT_EQ(cvlab::empirical_error_mse(4), ExactRational(1, 16));
  EXPECT_EQ(cvlab::empirical_error_mse(1), ExactRational(1, 4));
  EXPECT_EQ(cvlab::holdout_mse(4), ExactRational(1, 16));
  EXPECT_EQ(cvlab::holdout_mse(100), ExactRational(1, 400));
  EXPECT_EQ(cvlab::holdout_mse(1), ExactRational(1, 4));
}
