#pragma once

#include <stdexcept>
#include <string>

namespace apnim {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A requested length, horizon or cap is above the configured maximum.
class ResourceLimitError : public Error {
 public:
  using Error::Error;
};

/// A value does not fit in the machine-width integers used for positions.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// An operation was called on input outside its domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A textual specification (set, sequence, digit string, checkpoint) is malformed.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A word does not determine a representing sequence within the given window.
class ExtractionError : public Error {
 public:
  using Error::Error;
};

}  // namespace apnim
