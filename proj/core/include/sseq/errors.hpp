#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sseq {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FieldMismatch : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class ContainmentError : public Error {
 public:
  using Error::Error;
};

class RangeError : public Error {
 public:
  using Error::Error;
};

class InvalidSimplicialSet : public Error {
 public:
  using Error::Error;
};

class UnsupportedInput : public Error {
 public:
  using Error::Error;
};

// Raised when a map fails to respect a filtration; carries the offending
// basis generator so callers can report it.
class FiltrationViolation : public Error {
 public:
  FiltrationViolation(const std::string& what, int degree, std::size_t generator)
      : Error(what), degree_(degree), generator_(generator) {}
  int degree() const { return degree_; }
  std::size_t generator() const { return generator_; }

 private:
  int degree_;
  std::size_t generator_;
};

// A mathematical invariant that must hold by construction did not. These are
// bugs, never user errors.
class InternalConsistency : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"),
        line_(line),
        column_(column) {}
  explicit ParseError(const std::string& what) : Error(what) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_ = 0;
  std::size_t column_ = 0;
};

}  // namespace sseq
