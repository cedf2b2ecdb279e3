#pragma once

#include <stdexcept>
#include <string>

namespace spdkit {

// Base of every exception thrown by spdkit.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Caller-side problems: bad dimensions, non-SPD data, malformed files,
// out-of-range parameters, unknown names. The CLI maps these to exit code 2.
class InputError : public Error {
 public:
  using Error::Error;
};

// Runtime numerical breakdown: eigensolver non-convergence, exp/log range
// overflow. The CLI maps these to exit code 3.
class NumericError : public Error {
 public:
  using Error::Error;
};

class NotSquareError final : public InputError {
 public:
  using InputError::InputError;
};

class NotSymmetricError final : public InputError {
 public:
  using InputError::InputError;
};

class NotPositiveDefiniteError final : public InputError {
 public:
  using InputError::InputError;
};

class DimensionMismatchError final : public InputError {
 public:
  using InputError::InputError;
};

// Kronecker product result would exceed the configured dimension cap.
class DimensionOverflowError final : public InputError {
 public:
  using InputError::InputError;
};

class InvalidParameterError final : public InputError {
 public:
  using InputError::InputError;
};

class NonPositiveInputError final : public InputError {
 public:
  using InputError::InputError;
};

class ParseError final : public InputError {
 public:
  using InputError::InputError;
};

class ValidationError final : public InputError {
 public:
  using InputError::InputError;
};

class UnknownLawError final : public InputError {
 public:
  using InputError::InputError;
};

// Iterative eigensolver exceeded its iteration budget (numerical pathology).
class ConvergenceError final : public NumericError {
 public:
  using NumericError::NumericError;
};

// A computed exponent left the representable range; inputs need rescaling.
class OverflowError final : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace spdkit
