#pragma once

#include <stdexcept>
#include <string>

namespace geocover {

// All library failures derive from Error so callers (the CLI in particular)
// can map them to exit codes in one place.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An argument outside the mathematical domain of an operation.
struct DomainError : Error {
  using Error::Error;
};

// A documented precondition of an operation was violated by the caller.
struct PreconditionError : Error {
  using Error::Error;
};

// A construction self-check failed, or an internal invariant was broken.
struct InvariantError : Error {
  using Error::Error;
};

// A desk-scale size cap or iteration cap was exceeded.
struct CapExceeded : Error {
  using Error::Error;
};

// Exact integer arithmetic left the representable range.
struct OverflowError : Error {
  using Error::Error;
};

}  // namespace geocover
