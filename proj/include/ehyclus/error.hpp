#pragma once

#include <stdexcept>
#include <string>

namespace ehyclus {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mismatched lengths or shapes.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Invalid argument value (out of range, wrong vocabulary, ...).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure could not produce a reliable answer.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// The input is degenerate for the requested operation
/// (zero-variance dimension, isolated vertex, ...).
class DegeneracyError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Malformed file content.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace ehyclus
