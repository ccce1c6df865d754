#pragma once

#include <stdexcept>
#include <string>

namespace stgray {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input. `line()` is 1-based; 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// The input graph cannot be embedded as requested (crossing chords,
/// disconnected, not 2-connected where required, ...).
class EmbeddingError : public Error {
 public:
  using Error::Error;
};

/// A property that must always hold was observed to fail. Always a bug.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace stgray
