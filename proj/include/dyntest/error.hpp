#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dyntest {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A malformed input record. Carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class ArgumentError : public Error {
 public:
  using Error::Error;
};

class RangeError : public Error {
 public:
  using Error::Error;
};

class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Bad configuration or command-line usage.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// The joined observation table has no rows.
class EmptyObservationError : public Error {
 public:
  EmptyObservationError() : Error("no tested, executed classes in scope") {}
};

}  // namespace dyntest
