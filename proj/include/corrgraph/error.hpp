#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace corrgraph {

/// Root of every error the library raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad user input: malformed files, inconsistent shapes, invalid options.
class InputError : public Error {
 public:
  using Error::Error;
};

class ParseError : public InputError {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : InputError(source + ":" + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class NotPositiveDefinite : public Error {
 public:
  using Error::Error;
};

class ZeroVarianceColumn : public InputError {
 public:
  explicit ZeroVarianceColumn(std::size_t column)
      : InputError("column " + std::to_string(column) + " has zero variance"), column_(column) {}
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t column_;
};

class TooFewRows : public InputError {
 public:
  using InputError::InputError;
};

class EmptyTrace : public InputError {
 public:
  using InputError::InputError;
};

class LengthMismatch : public InputError {
 public:
  using InputError::InputError;
};

class DegenerateUncertainty : public Error {
 public:
  using Error::Error;
};

class ChainDiverged : public Error {
 public:
  using Error::Error;
};

class ConstantRanks : public InputError {
 public:
  using InputError::InputError;
};

class DegenerateVariance : public Error {
 public:
  using Error::Error;
};

class DegenerateClass : public InputError {
 public:
  using InputError::InputError;
};

}  // namespace corrgraph
