#pragma once

#include <cstdint>
#include <string>

#include "cvlab/algorithm.hpp"
#include "cvlab/rational.hpp"

namespace cvlab {

enum class DataKind {
  PointMassRandomLabel,  // single feature point, label ~ Bernoulli(q)
  UniformThreshold,      // x ~ U[0, 1], y = 1{x > 1/2}
};

struct DataSpec {
  DataKind kind = DataKind::PointMassRandomLabel;
  double q = 0.5;  // P(y = 1); point-mass data only
  std::int64_t n = 0;

  static DataSpec point_mass(std::int64_t n, double q = 0.5);
  static DataSpec uniform_threshold(std::int64_t n);
};

std::string to_string(DataKind kind);

/// Name of the generator family, recorded in every output's metadata.
inline constexpr const char* kGeneratorName = "splitmix64/per-trial";

/// SplitMix64. Trial t of a run seeded with s draws from its own stream
/// (s, t), so results never depend on execution order.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}
  static SplitMix64 for_trial(std::uint64_t seed, std::uint64_t trial);

  std::uint64_t next();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::uint64_t state_;
};

struct SimEstimate {
  double mean = 0;
  double std_error = 0;  // sample standard deviation / sqrt(trials)
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
};

struct CvSimulation {
  SimEstimate mse;        // (L_CV - L(A(S^n)))^2
  SimEstimate estimator;  // L_CV itself
};

struct SimOptions {
  unsigned workers = 0;  // 0: worker_count()
};

/// Monte Carlo k-fold CV. Population risks are closed-form: q or 1 - q for
/// constant hypotheses on point-mass data, 1/2 for constants and p for the
/// interval rule on threshold data.
CvSimulation simulate_cv(const DataSpec& data, const AlgorithmSpec& algo, std::int64_t k, std::int64_t trials,
                         std::uint64_t seed, const SimOptions& options = {});

SimEstimate run_cv_mse(const DataSpec& data, const AlgorithmSpec& algo, std::int64_t k, std::int64_t trials,
                       std::uint64_t seed, const SimOptions& options = {});

/// P[Maj(S^{n-m}) != Maj(S^{n-m} . S^m)] with labels ~ Bernoulli(q), exact.
ExactRational exact_hypothesis_stability(std::int64_t n, std::int64_t m, TiePolicy tie,
                                         const ExactRational& q = ExactRational(1, 2));

/// E|L(Maj(S^n)) - L(Maj(S^{n-m}))| on point-mass data: |1 - 2q| times the
/// flip probability.
ExactRational exact_majority_loss_stability(std::int64_t n, std::int64_t m, TiePolicy tie, const ExactRational& q);

struct AnticorrStability {
  ExactRational beta;  // E|Y/n - 1/2|, Y ~ Bin(n, 1/2)
  ExactRational mse;   // CV MSE of the interval construction
};

/// Loss stability and CV MSE of the interval counterexample with m = n/2.
AnticorrStability loss_stability_anticorr(std::int64_t n);

/// Monte Carlo E|L(A(S^{n-m} . S^m)) - L(A(S^{n-m}))|.
SimEstimate estimate_loss_stability(const DataSpec& data, const AlgorithmSpec& algo, std::int64_t n, std::int64_t m,
                                    std::int64_t trials, std::uint64_t seed, const SimOptions& options = {});

}  // namespace cvlab
