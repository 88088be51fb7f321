#pragma once

#include <stdexcept>
#include <string>

namespace hencky {

/// Base of all library errors. The CLI maps each category to an exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input that violates a precondition: non-finite values, det F <= 0,
/// non-SPD tensors, malformed files or parameters.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A malformed or inconsistent external input (file, config, column).
class InputError : public Error {
 public:
  using Error::Error;
};

/// An iterative solver that did not reach its tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// A postcondition the library guarantees was found violated.
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace hencky
