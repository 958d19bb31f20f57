#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hama {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A pattern invocation was malformed (zero workers, zero chunk, wrong kind, missing identity).
class InvalidPlan : public Error {
 public:
  using Error::Error;
};

/// A configuration object failed validation.
class InvalidConfig : public Error {
 public:
  using Error::Error;
};

/// A request was well-formed but cannot be served (empty grid, missing serial phase).
class InvalidRequest : public Error {
 public:
  using Error::Error;
};

/// A numeric argument was outside the domain of a model function.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Checked integer arithmetic detected a coefficient overflow.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// A computed result failed a cross-check and must not be reported.
class CorrectnessFailure : public Error {
 public:
  using Error::Error;
};

/// Reading or writing a file failed.
class IoError : public Error {
 public:
  using Error::Error;
};

/// A text configuration file could not be parsed or failed schema checks.
/// `line()` is 1-based; 0 means the location is unknown.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& message, std::size_t line)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A stream pattern stopped early. `completed()` elements were delivered, in order,
/// before the failure.
class PartialOutputError : public Error {
 public:
  PartialOutputError(const std::string& message, std::size_t completed)
      : Error(message + " (" + std::to_string(completed) + " elements completed)"),
        completed_(completed) {}

  std::size_t completed() const noexcept { return completed_; }

 private:
  std::size_t completed_;
};

/// One element of a batch failed; `index()` identifies it.
class BatchError : public Error {
 public:
  BatchError(const std::string& message, std::size_t index)
      : Error("pair " + std::to_string(index) + ": " + message), index_(index) {}

  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

}  // namespace hama
