#pragma once

#include <stdexcept>
#include <string>

namespace padic_sl2 {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Bad constructor/operation parameters (non-prime p, square delta, ...).
class InvalidParams : public Error {
 public:
  using Error::Error;
};

// Rational input with zero denominator.
class InvalidRational : public Error {
 public:
  using Error::Error;
};

// A predicate or value cannot be decided at the tracked precision.
// Callers may retry at higher precision; the library never guesses.
class PrecisionExhausted : public Error {
 public:
  using Error::Error;
};

// Operation applied outside its mathematical domain (inverse of zero, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class NotASquare : public Error {
 public:
  using Error::Error;
};

// Classification-dependent operation applied to the wrong conjugacy type.
class WrongClass : public Error {
 public:
  using Error::Error;
};

class WrongSubgroup : public Error {
 public:
  using Error::Error;
};

class UnsupportedCase : public Error {
 public:
  using Error::Error;
};

// Enumeration size guard.
class TooLarge : public Error {
 public:
  using Error::Error;
};

// A self-check failed.  Reaching this means a bug or a falsified claim,
// never a recoverable input condition.
class InternalInconsistency : public Error {
 public:
  using Error::Error;
};

}  // namespace padic_sl2
