#pragma once

#include <stdexcept>
#include <string>

namespace possdom {

/// Malformed or out-of-contract input (bad index, arity mismatch, degenerate
/// domain under the strict policy, ...). Maps to CLI exit code 2.
class InputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Syntax error in one of the text formats, with a 1-based position.
class ParseError : public InputError {
public:
  ParseError(const std::string& what, int line, int column)
      : InputError("line " + std::to_string(line) + ", column " + std::to_string(column) +
                   ": " + what),
        line_(line), column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

private:
  int line_;
  int column_;
};

/// An enumeration or tuple-space cap would be exceeded. Maps to CLI exit code 3.
class CapExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A produced witness failed its own re-verification. Always a bug.
class VerificationFailure : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

}  // namespace possdom
