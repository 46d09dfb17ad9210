#pragma once

#include <cstdint>
#include <string>

namespace cvlab {

/// How Majority resolves Y == size/2. ToZero is the textbook rule
/// (output h0 iff Y <= size/2).
enum class TiePolicy { ToZero, ToOne };

enum class AlgorithmKind { Constant, Majority, AnticorrInterval };

struct AlgorithmSpec {
  AlgorithmKind kind = AlgorithmKind::Majority;
  int constant_bit = 0;
  TiePolicy tie_policy = TiePolicy::ToZero;
  std::string description;

  static AlgorithmSpec constant(int bit);
  static AlgorithmSpec majority(TiePolicy tie = TiePolicy::ToZero);
  /// Interval rule 1{1/2 - p/2 < x < 1 - p/2} on the full sample (p = mean
  /// label), constant h0 on any strict subsample. Only meaningful on
  /// UniformThreshold data.
  static AlgorithmSpec anticorr_interval();

  /// True when the output depends only on (label count, sample size).
  [[nodiscard]] bool label_count_determined() const { return kind != AlgorithmKind::AnticorrInterval; }
};

std::string to_string(AlgorithmKind kind);
std::string to_string(TiePolicy tie);

struct Hypothesis {
  enum class Kind { Zero, One, Interval };
  Kind kind = Kind::Zero;
  /// Interval hypotheses only: predicts 1 on (1/2 - p/2, 1 - p/2).
  double p = 0;

  [[nodiscard]] int predict(double x) const;
};

/// Majority's decision on a sample of `size` labels with `ones` ones.
bool majority_predicts_one(std::int64_t ones, std::int64_t size, TiePolicy tie);

/// Trains `algo` on a sample summarized by its label count. `full_size` is the
/// size of the complete data set; the interval rule only fires there.
Hypothesis train(const AlgorithmSpec& algo, std::int64_t ones, std::int64_t size, std::int64_t full_size);

}  // namespace cvlab
