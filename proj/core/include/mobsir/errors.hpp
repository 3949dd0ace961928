#pragma once

#include <stdexcept>
#include <string>

namespace mobsir {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid parameter values or an unusable configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Container dimensions do not match the network size.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Location index outside the valid range.
class IndexError : public Error {
 public:
  using Error::Error;
};

/// Malformed input data; the message names the file and line where known.
class InputError : public Error {
 public:
  using Error::Error;
};

/// File could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Integrator produced a negative compartment beyond tolerance; the step
/// size is too large for the given rates.
class StiffnessError : public Error {
 public:
  using Error::Error;
};

/// Quadrature target lies at or beyond the epidemic steady state.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace mobsir
