#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rkhs {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad arguments that violate a documented precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Numerical breakdown (singular systems, loss of positivity, divergence...).
class NumericalError : public Error {
 public:
  using Error::Error;
};

class SingularMatrix : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class ConvergenceFailure : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class IllConditionedConstruction : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class DegenerateConstraint : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class DegenerateNode : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class LossOfPositivity : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class ZeroReference : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class Divergence : public NumericalError {
 public:
  Divergence(const std::string& what, std::size_t step)
      : NumericalError(what), step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

/// File could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

class OutOfDomain : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// Requested derivative does not exist on the kernel diagonal.
class SmoothnessExceeded : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

}  // namespace rkhs
