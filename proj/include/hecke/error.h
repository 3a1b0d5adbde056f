#pragma once

#include <stdexcept>
#include <string>

namespace hecke {

// Raised when an argument violates an operation's documented precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when an exact computation would leave the range of its integer type.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

// Raised by the table cache loader when a file is malformed or fails validation.
class CacheError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw PreconditionError(message);
}

}  // namespace hecke
