#pragma once

#include <stdexcept>
#include <string>

namespace qdd {

/// Base class for all errors raised by the simulator library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Non-finite or out-of-range numeric input.
class NumericError : public Error {
public:
  using Error::Error;
};

/// Violated structural precondition (level ordering, dimension mismatch,
/// overlapping gate operands).
class StructureError : public Error {
public:
  using Error::Error;
};

/// Internal bookkeeping misuse, e.g. dereferencing a dead edge.
class LogicError : public Error {
public:
  using Error::Error;
};

/// A physical invariant failed beyond tolerance (negative probability,
/// trace drift, non-normalized input state).
class InvariantError : public Error {
public:
  using Error::Error;
};

/// QASM parse failure, anchored to a 1-based source line.
class ParseError : public Error {
public:
  ParseError(int line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  [[nodiscard]] int line() const { return line_; }

private:
  int line_;
};

} // namespace qdd
