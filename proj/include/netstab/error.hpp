#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace netstab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Cholesky pivot was not strictly positive.
class DefinitenessError : public Error {
 public:
  DefinitenessError(std::size_t pivot, double value);
  std::size_t pivot() const noexcept { return pivot_; }
  double value() const noexcept { return value_; }

 private:
  std::size_t pivot_;
  double value_;
};

class SampleSizeError : public Error {
 public:
  using Error::Error;
};

/// A variable with zero variance (or a zero scale diagonal).
class DegenerateError : public Error {
 public:
  DegenerateError(std::size_t variable, const std::string& what);
  std::size_t variable() const noexcept { return variable_; }

 private:
  std::size_t variable_;
};

class RangeError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

class BinMismatchError : public Error {
 public:
  using Error::Error;
};

class KindError : public Error {
 public:
  using Error::Error;
};

class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file (CSV or JSON).
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Input path does not exist or cannot be opened.
class MissingInputError : public Error {
 public:
  using Error::Error;
};

/// Experiment configuration failed validation; one message per bad field.
class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const noexcept { return problems_; }

 private:
  std::vector<std::string> problems_;
};

}  // namespace netstab
