#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <string>

#include "cvlab/algorithm.hpp"
#include "cvlab/sim.hpp"

namespace cvlab::cli {

/// Flat key=value simulation config. Blank lines and '#' comments are
/// skipped. Keys: n, k, algo (majority|constant|anticorr), tie (zero|one),
/// bit (0|1), q, data (point_mass|uniform_threshold), trials, seed.
struct SimConfig {
  std::int64_t n = 0;
  std::int64_t k = 0;
  AlgorithmSpec algo = AlgorithmSpec::majority();
  DataSpec data;
  std::int64_t trials = 10'000;
  std::uint64_t seed = 0;

  static SimConfig parse(std::istream& in);
  static SimConfig from_map(const std::map<std::string, std::string>& values);

  /// Canonical parameters without the seed; input to the config hash.
  [[nodiscard]] std::map<std::string, std::string> canonical() const;
};

}  // namespace cvlab::cli
