#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace extremal {

/// A documented precondition on the arguments was violated.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input exceeds a configured size limit (vertex count, matrix order, ...).
class SizeLimitError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Malformed graph6 / digraph6 / cache input. `offset` is the byte position
/// at which decoding failed.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at byte " + std::to_string(offset)), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace extremal
