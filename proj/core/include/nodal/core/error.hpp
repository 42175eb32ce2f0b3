#pragma once

#include <stdexcept>
#include <string>

namespace nodal {

/// Base of every error thrown by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live in polynomial rings of different arity.
class ArityMismatch : public Error {
 public:
  ArityMismatch(std::size_t lhs, std::size_t rhs)
      : Error("arity mismatch: " + std::to_string(lhs) + " vs " + std::to_string(rhs)) {}
};

/// An argument violates an operation's precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Malformed input data (JSON files, rational strings).
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace nodal
