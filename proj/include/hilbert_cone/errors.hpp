// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace hilbert_cone {

// Base of every error raised by the library. Subclasses tag the failure
// category so the CLI can map them onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operand lengths or shapes disagree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Input lies outside the domain of the operation (boundary point handed
// to a chart, zero weight where full support is required, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Input violates a type invariant (negative weight, non-allowable matrix,
// unsorted support, non-positive radius, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Result would not be representable in double precision.
class RangeError : public Error {
 public:
  using Error::Error;
};

class UnsupportedDimensionError : public Error {
 public:
  using Error::Error;
};

// A bound's hypotheses are not met for the given inputs.
class BoundInapplicableError : public Error {
 public:
  using Error::Error;
};

// An internal consistency check failed. Seeing one of these is a bug.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what + " (line " + std::to_string(line) + ", column " +
              std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace hilbert_cone
