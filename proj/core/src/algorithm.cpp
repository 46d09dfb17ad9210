#include "cvlab/algorithm.hpp"

#include "cvlab/error.hpp"

namespace cvlab {

AlgorithmSpec AlgorithmSpec::constant(int bit) {
  require(bit == 0 || bit == 1, "constant bit must be 0 or 1");
  AlgorithmSpec spec;
  spec.kind = AlgorithmKind::Constant;
  spec.constant_bit = bit;
  spec.description = "constant h" + std::to_string(bit);
  return spec;
}

AlgorithmSpec AlgorithmSpec::majority(TiePolicy tie) {
  AlgorithmSpec spec;
  spec.kind = AlgorithmKind::Majority;
  spec.tie_policy = tie;
  spec.description = "majority, ties " + to_string(tie);
  return spec;
}

AlgorithmSpec AlgorithmSpec::anticorr_interval() {
  AlgorithmSpec spec;
  spec.kind = AlgorithmKind::AnticorrInterval;
  spec.description = "interval on full sample, h0 on subsamples";
  return spec;
}

std::string to_string(AlgorithmKind kind) {
  switch (kind) {
    case AlgorithmKind::Constant: return "constant";
    case AlgorithmKind::Majority: return "majority";
    case AlgorithmKind::AnticorrInterval: return "anticorr";
  }
  return "unknown";
}

std::string to_string(TiePolicy tie) { return tie == TiePolicy::ToZero ? "zero" : "one"; }

int Hypothesis::predict(double x) const {
  switch (kind) {
    case Kind::Zero: return 0;
    case Kind::One: return 1;
    case Kind::Interval: return (0.5 - p / 2 < x && x < 1.0 - p / 2) ? 1 : 0;
  }
  return 0;
}

bool majority_predicts_one(std::int64_t ones, std::int64_t size, TiePolicy tie) {
  return tie == TiePolicy::ToZero ? 2 * ones > size : 2 * ones >= size;
}

Hypothesis train(const AlgorithmSpec& algo, std::int64_t ones, std::int64_t size, std::int64_t full_size) {
  switch (algo.kind) {
    case AlgorithmKind::Constant:
      return {algo.constant_bit == 1 ? Hypothesis::Kind::One : Hypothesis::Kind::Zero, 0};
    case AlgorithmKind::Majority:
      return {majority_predicts_one(ones, size, algo.tie_policy) ? Hypothesis::Kind::One : Hypothesis::Kind::Zero,
              0};
    case AlgorithmKind::AnticorrInterval:
      if (size == full_size) {
        return {Hypothesis::Kind::Interval, static_cast<double>(ones) / static_cast<double>(size)};
      }
      return {Hypothesis::Kind::Zero, 0};
  }
  return {};
}

}  // namespace cvlab
