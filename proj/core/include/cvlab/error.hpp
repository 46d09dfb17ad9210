#pragma once

#include <stdexcept>
#include <string>

namespace cvlab {

/// Raised when an argument violates a documented precondition. The message
/// names the violated invariant (e.g. "k must divide n").
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw InvalidArgument(message);
}

}  // namespace cvlab
