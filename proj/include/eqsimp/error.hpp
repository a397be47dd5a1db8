#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace eqsimp {

class Error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed concrete syntax. `position` is a 0-based character offset.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& message)
      : Error("syntax error at " + std::to_string(position) + ": " + message),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class UnboundLetter : public Error {
 public:
  explicit UnboundLetter(const std::string& token)
      : Error("no truth value for letter '" + token + "'") {}
};

class UnboundVariable : public Error {
 public:
  explicit UnboundVariable(const std::string& token)
      : Error("valuation does not bind variable '" + token + "'") {}
};

/// Thrown by the store before any mutation when a creation would exceed capacity.
class CapacityExceeded : public Error {
 public:
  CapacityExceeded() : Error("collection of structures is full") {}
};

class UnknownId : public Error {
 public:
  explicit UnknownId(unsigned value)
      : Error("identifier " + std::to_string(value) + " is not live") {}
};

class UnknownPreset : public Error {
 public:
  explicit UnknownPreset(const std::string& name) : Error("unknown preset '" + name + "'") {}
};

class InvalidParameter : public Error {
  using Error::Error;
};

/// Problems in a theory file: bad header, arity clash, too many variables.
class TheoryError : public Error {
  using Error::Error;
};

}  // namespace eqsimp
