#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace proctime {

/// Malformed input text. `position` is a byte offset or a 1-based line
/// number depending on the reader; `what()` says which.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : std::runtime_error(message), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Input that is well formed but references unknown ids or contradicts
/// itself at build time.
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A search was asked to go beyond its desk-scale bound.
class ScaleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace proctime
