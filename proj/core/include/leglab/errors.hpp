#pragma once

#include <stdexcept>
#include <string>

namespace leglab {

// Validation errors reject bad input; numerical errors mean the input was
// acceptable but a computation could not be carried out (genericity, root
// bracketing).  The CLI maps them to exit codes 2 and 3.
enum class ErrorKind { Validation, Numerical };

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

struct ValidationError : Error {
  explicit ValidationError(const std::string& what) : Error(ErrorKind::Validation, what) {}
};

struct NumericalError : Error {
  explicit NumericalError(const std::string& what) : Error(ErrorKind::Numerical, what) {}
};

struct DegenerateInputError : ValidationError {
  using ValidationError::ValidationError;
};

struct NotEmbeddedError : ValidationError {
  using ValidationError::ValidationError;
};

struct NonInjectiveProjectionError : ValidationError {
  using ValidationError::ValidationError;
};

struct DomainError : ValidationError {
  using ValidationError::ValidationError;
};

struct PreconditionError : ValidationError {
  using ValidationError::ValidationError;
};

struct GenericityError : NumericalError {
  using NumericalError::NumericalError;
};

struct RangeError : NumericalError {
  using NumericalError::NumericalError;
};

}  // namespace leglab
