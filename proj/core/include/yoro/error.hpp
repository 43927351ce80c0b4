#pragma once

#include <stdexcept>
#include <string>

namespace yoro {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed text input (ragged grid, bad DIMACS, bad solver output, ...).
class FormatError : public Error {
 public:
  using Error::Error;
};

class UnknownTileError : public Error {
 public:
  using Error::Error;
};

// A solver model that does not assign exactly one tile per cell.
class InconsistentModelError : public Error {
 public:
  using Error::Error;
};

// Precondition violations on library inputs.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// External solver failed without producing a parseable answer.
class AdapterError : public Error {
 public:
  using Error::Error;
};

}  // namespace yoro
