#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace momentlab {

/// Argument outside the mathematical domain of a function.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A finite-difference stencil left the domain of the differentiated function.
class DomainClippedError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A value violates a documented invariant (relation sets, instance indices, ...).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed text input. `line()` is 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A search budget was exhausted before a decision was reached.
class ResourceLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An enumeration oracle was asked for a probability space above its cap.
class SizeLimitError : public std::length_error {
 public:
  using std::length_error::length_error;
};

class NotCharacteristicError : public DomainError {
 public:
  using DomainError::DomainError;
};

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MultipleMaximaError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class DegenerateCurvatureError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// A sweep did not bracket the 0.5 satisfiability level.
class NoCrossingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace momentlab
