#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace spreadnet {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller supplied an invalid argument (bad probability, zero repetitions, k out of range...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Value lies outside the mathematical domain of a function.
class DomainError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

/// Unknown actor, layer or file.
class NotFoundError : public Error {
 public:
  using Error::Error;
};

/// Input data is malformed or inconsistent. Maps to exit code 2 in the CLI.
class DataError : public Error {
 public:
  using Error::Error;
};

class ParseError : public DataError {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : DataError(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Input is structurally valid but too small for the requested computation.
class DegenerateInputError : public DataError {
 public:
  using DataError::DataError;
};

/// Network construction found invariant violations; all of them are kept.
class ValidationError : public DataError {
 public:
  explicit ValidationError(std::vector<std::string> violations);

  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  std::vector<std::string> violations_;
};

/// Two rankings (or a ranking and a score table) do not cover the same actors.
class ActorMismatchError : public DataError {
 public:
  ActorMismatchError(std::vector<std::string> only_left, std::vector<std::string> only_right);

  const std::vector<std::string>& only_left() const noexcept { return only_left_; }
  const std::vector<std::string>& only_right() const noexcept { return only_right_; }

 private:
  std::vector<std::string> only_left_;
  std::vector<std::string> only_right_;
};

}  // namespace spreadnet
