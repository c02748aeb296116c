#pragma once

#include <stdexcept>
#include <string>

namespace scsprbg {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operand widths disagree (vector lengths, matrix dims, state sizes).
class WidthMismatch : public Error {
 public:
  using Error::Error;
};

// Invalid parameters supplied at construction time.
class ParamError : public Error {
 public:
  using Error::Error;
};

// Malformed or truncated serialized data.
class FormatError : public Error {
 public:
  using Error::Error;
};

// Keystream consumer position does not match a frame's recorded offset.
class DesyncError : public Error {
 public:
  using Error::Error;
};

// A toy-scale routine was asked to run above its size guard.
class GuardError : public Error {
 public:
  using Error::Error;
};

}  // namespace scsprbg
