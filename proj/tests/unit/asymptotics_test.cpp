#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "cvlab/asymptotics.hpp"
#include "cvlab/error.hpp"
#include "cvlab/exact.hpp"

namespace {

constexpr double kPi = std::numbers::pi;

double exact_cov(std::int64_t n, std::int64_t m) { return static_cast<double>(std::exp(cvlab::fold_covariance_log(n, m))); }

cvlab::ThetaParams theta_at(double gamma, double mu) {
  cvlab::ThetaParams p;
  p.gamma = gamma;
  p.mu = mu;
  return p;
}

}  // namespace

TEST(GaussianProxy, Values) {
  EXPECT_NEAR(cvlab::gaussian_proxy(4, 2), std::sqrt(1 / (2 * kPi)), 1e-15);
  EXPECT_NEAR(cvlab::gaussian_proxy(2, 1), std::sqrt(1 / kPi), 1e-15);
  EXPECT_NEAR(cvlab::gaussian_proxy(2, 0), std::sqrt(1 / kPi) * std::exp(-1.0), 1e-15);
}

TEST(LltSupError, SmallCases) {
  // t = 1 dominates at r = 2: |1/2 - 1/sqrt(pi)|
  EXPECT_NEAR(cvlab::llt_sup_error(2), 1 / std::sqrt(kPi) - 0.5, 1e-15);
  EXPECT_LT(cvlab::llt_sup_error(16), cvlab::llt_sup_error(4));
  EXPECT_THROW(cvlab::llt_sup_error(1), cvlab::InvalidArgument);
}

TEST(LltSupError, FittedEnvelope) {
  const cvlab::AsymptoticConstants c;
  for (const std::int64_t r : {60, 100, 400, 1000, 3000}) {
    EXPECT_LE(cvlab::llt_sup_error(r), c.llt_c0 * std::pow(static_cast<double>(r), -1.5)) << r;
  }
}

TEST(LeadingTerm, Values) {
  EXPECT_NEAR(cvlab::leading_term(100, 10), 1 / (2 * kPi * std::sqrt(1530.0)), 1e-18);
  EXPECT_NEAR(cvlab::leading_term(100, 10) / exact_cov(100, 10), 1.0, 0.05);
  EXPECT_NEAR(exact_cov(1'000'000, 1000) / cvlab::leading_term(1'000'000, 1000), 1.0, 0.01);
  EXPECT_THROW(cvlab::leading_term(100, 1), cvlab::InvalidArgument);
  EXPECT_THROW(cvlab::leading_term(100, 51), cvlab::InvalidArgument);
}

TEST(LeadingTerm, ThreeFolds) {
  for (const std::int64_t n : {600, 3000, 30'000}) {
    const double k3 = std::sqrt(3.0) / (2 * kPi * static_cast<double>(n));
    EXPECT_NEAR(cvlab::leading_term(n, n / 3) / k3, 1.0, 3.0 / static_cast<double>(n));
  }
}

TEST(SublinearApprox, Values) {
  EXPECT_NEAR(cvlab::sublinear_approx(4, 1), 1 / (2 * std::sqrt(5 * kPi)), 1e-15);
  EXPECT_NEAR(cvlab::sublinear_approx(3000, 10) / exact_cov(3000, 10), 1.0, 1e-2);
  const double rel = std::abs(cvlab::sublinear_approx(1001, 1) / cvlab::endpoint_cov_m1(1001).to_double() - 1);
  EXPECT_LT(rel, 1.0 / 1001);
  EXPECT_THROW(cvlab::sublinear_approx(30, 11), cvlab::InvalidArgument);
}

TEST(ThetaParams, GammaIdentity) {
  for (const auto [n, m] : {std::pair{30, 5}, {30, 10}, {101, 7}, {1000, 40}}) {
    const auto p = cvlab::ThetaParams::make(n, m);
    const double big = static_cast<double>(n - 2 * m);
    EXPECT_NEAR(p.gamma, 2 * (2 * big + m - 1) / ((m - 1) * big), 1e-14);
    EXPECT_GT(p.alpha, 0);
    EXPECT_GT(p.beta, 0);
    EXPECT_TRUE(p.epsilon == 0.0 || p.epsilon == 0.5);
  }
  EXPECT_THROW(cvlab::ThetaParams::make(10, 5), cvlab::InvalidArgument);
  EXPECT_THROW(cvlab::ThetaParams::make(10, 1), cvlab::InvalidArgument);
}

TEST(ThetaCorrection, NarrowGaussianLimit) {
  // The series terms are exp(-pi^2 t^2 / gamma): they vanish as gamma shrinks.
  for (const double gamma : {0.4, 0.1, 1.0 / 40, 1e-3}) {
    for (const double mu : {0.0, 0.25, 0.5, 17.3}) {
      EXPECT_NEAR(cvlab::theta_correction(theta_at(gamma, mu)), 1.0, 1e-10) << gamma << "," << mu;
    }
  }
}

TEST(ThetaCorrection, UnitGamma) {
  double series = 0;
  for (int t = 1; t <= 6; ++t) series += std::exp(-kPi * kPi * t * t);
  EXPECT_NEAR(cvlab::theta_correction(theta_at(1.0, 0.0)), 1 + 2 * series, 1e-15);
}

TEST(ThetaCorrection, GeometricTailBound) {
  for (const double gamma : {0.5, 1.0, 4.0, 10.0}) {
    const double q = std::exp(-kPi * kPi / gamma);
    for (const double mu : {0.0, 0.1, 0.37, 0.5}) {
      EXPECT_LE(std::abs(cvlab::theta_correction(theta_at(gamma, mu)) - 1), 2 * q / (1 - q) + 1e-15);
    }
  }
}

TEST(LatticeSum, DirectMatchesThetaForm) {
  for (const auto [n, m] : {std::pair{30, 5}, {30, 10}, {31, 10}, {300, 50}, {1000, 3}, {5000, 1600}}) {
    const double direct = cvlab::triple_gaussian_lattice_sum(n, m, cvlab::LatticeMode::Direct);
    const double theta = cvlab::triple_gaussian_lattice_sum(n, m, cvlab::LatticeMode::ThetaForm);
    EXPECT_NEAR(theta / direct, 1.0, 1e-12) << n << "," << m;
  }
  const double approx = (2 / kPi) / std::sqrt(49.0 * (600 - 150 - 1));
  EXPECT_NEAR(cvlab::triple_gaussian_lattice_sum(300, 50, cvlab::LatticeMode::Direct) / approx, 1.0, 0.01);
  EXPECT_THROW(cvlab::triple_gaussian_lattice_sum(20, 10, cvlab::LatticeMode::Direct), cvlab::InvalidArgument);
}

TEST(PoissonSummation, Identity) {
  for (const auto [gamma, mu] : {std::pair{1.0, 0.3}, {0.05, 17.25}, {50.0, 0.5}, {3.0, -2.7}}) {
    const auto s = cvlab::poisson_summation_check(gamma, mu);
    EXPECT_NEAR(s.lhs / s.rhs, 1.0, 1e-12) << gamma << "," << mu;
  }
  const auto wide = cvlab::poisson_summation_check(50.0, 0.5);
  EXPECT_NEAR(wide.lhs, 2 * std::exp(-12.5), 1e-12);
}

TEST(LargeMApprox, BudgetHolds) {
  const auto a = cvlab::large_m_approx(3000, 1000);
  EXPECT_NEAR(a.leading, 1 / (2 * kPi * std::sqrt(999.0 * 3000)), 1e-18);
  EXPECT_LE(std::abs(exact_cov(3000, 1000) - a.leading), a.error_budget);
  EXPECT_NEAR(cvlab::large_m_approx(600, 200).leading / (std::sqrt(3.0) / (2 * kPi * 600)), 1.0, 0.01);
  EXPECT_NEAR(cvlab::large_m_approx(120, 40).leading / exact_cov(120, 40), 1.0, 0.05);
  EXPECT_THROW(cvlab::large_m_approx(300, 101), cvlab::InvalidArgument);
}

TEST(LargeMApprox, BudgetOnGrid) {
  for (const std::int64_t n : {60, 120, 360, 720, 2520}) {
    for (std::int64_t m = 2; 3 * m <= n; ++m) {
      if (n % m != 0) continue;
      const auto a = cvlab::large_m_approx(n, m);
      EXPECT_LE(std::abs(exact_cov(n, m) - a.leading), a.error_budget) << n << "," << m;
    }
  }
}

TEST(CovarianceReport, Fields) {
  const auto r = cvlab::covariance_report(3000, 10);
  ASSERT_TRUE(r.leading && r.sublinear && r.theta_corrected);
  EXPECT_GT(*r.leading, 0);
  EXPECT_DOUBLE_EQ(*r.rel_err_leading, std::abs(*r.leading / r.exact - 1));
  EXPECT_DOUBLE_EQ(*r.rel_err_sublinear, std::abs(*r.sublinear / r.exact - 1));
  const auto one = cvlab::covariance_report(12, 1);
  EXPECT_FALSE(one.leading);
  EXPECT_TRUE(one.sublinear);
  const auto half = cvlab::covariance_report(12, 6);
  EXPECT_FALSE(half.sublinear);
  EXPECT_FALSE(half.theta_corrected);
  EXPECT_TRUE(half.leading);
}
