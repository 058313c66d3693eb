#pragma once

#include <stdexcept>
#include <string>

namespace quatrep {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad input: a precondition of the called operation does not hold.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Not enough p-adic digits left to produce a meaningful answer.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

/// A configured size or time budget would be exceeded.
class BudgetError : public Error {
 public:
  using Error::Error;
};

/// A computation that should succeed did not, e.g. a failed progress assertion.
class ObstructionError : public Error {
 public:
  using Error::Error;
};

}  // namespace quatrep
