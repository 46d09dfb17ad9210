#pragma once

#include <cstdint>

#include "cvlab/algorithm.hpp"
#include "cvlab/exact.hpp"
#include "cvlab/rational.hpp"

namespace cvlab {

/// Exact CV moments under uniformly random labels.
struct OracleResult {
  ExactRational mse;
  ExactRational fold_covariance;  // Cov(L_1, L_2)
  ExactRational fold_variance;    // Var(L_1)
  ExactRational estimator_mean;   // E[L_CV]
};

struct OracleConfig {
  std::int64_t brute_force_cap = 20;
  unsigned workers = 0;  // 0: worker_count()
};

/// Enumerates all 2^n label vectors. Folds are consecutive index blocks; each
/// fold is scored by the rule trained on its complement, and the MSE is taken
/// against the population risk of the full-sample hypothesis (1/2 for every
/// constant hypothesis under uniform labels).
OracleResult bitstring_cv_oracle(const FoldScheme& scheme, const AlgorithmSpec& algo,
                                 const OracleConfig& config = {});

/// Majority (ties to h0) via fold label counts: sums over (x1, x2, y) with
/// product-binomial weights. The y-sum inside each (x1, x2) cell is collapsed
/// with prefix sums of C(n-2m, y). Requires m <= 512.
OracleResult count_cv_oracle(const FoldScheme& scheme);

struct FactorizationSides {
  ExactRational direct;    // count-oracle covariance
  ExactRational factored;  // 4 E_Y[Cov(X/m, 1{X > theta - Y} | Y)^2]
};

FactorizationSides factorization_check(const FoldScheme& scheme);

/// E[(L_emp - 1/2)^2] for Majority's training error min(Y/n, 1 - Y/n).
ExactRational empirical_error_mse(std::int64_t n);
/// E[(1/2 - Y/n)^2]: an independent size-n validation set.
ExactRational holdout_mse(std::int64_t n);

}  // namespace cvlab
