#pragma once

#include <stdexcept>
#include <string>

namespace ffconv {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Degree or length mismatch between operands.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Index outside its admissible range (e.g. k > d in e_tilde).
class IndexError : public Error {
 public:
  using Error::Error;
};

/// Mathematical domain violation: non-real-rooted input, p(0) = 0 for reverse, ...
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Malformed serialized input (JSON, rational strings, target specs).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// The requested combination of arguments has no implementation.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

}  // namespace ffconv
