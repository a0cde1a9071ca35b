#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qmod {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller-supplied argument violates an operation's precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A coefficient or range was requested beyond the certified precision.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

// Signed 64-bit exponent arithmetic overflowed.
class OverflowError : public Error {
 public:
  using Error::Error;
};

class NotInvertibleError : public Error {
 public:
  using Error::Error;
};

// Eta quotient whose q-shift sum(delta * r) / 24 is not an integer.
class ShiftError : public Error {
 public:
  using Error::Error;
};

// Some delta of an eta quotient does not divide the level.
class LevelMismatchError : public Error {
 public:
  using Error::Error;
};

class UnknownFormError : public Error {
 public:
  using Error::Error;
};

// Integer elimination met a pivot that is not a unit.
class EliminationError : public Error {
 public:
  EliminationError(const std::string& what, std::int64_t exponent)
      : Error(what), exponent_(exponent) {}
  std::int64_t exponent() const noexcept { return exponent_; }

 private:
  std::int64_t exponent_;
};

// The requested distinguished form does not exist for these parameters.
class UnconstructibleError : public Error {
 public:
  using Error::Error;
};

}  // namespace qmod
