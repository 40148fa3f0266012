#pragma once

#include <stdexcept>
#include <string>

namespace gsetpn {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed arguments: bad factor orders, out-of-range points, non-partitions.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A proposed action map violates the group action axioms.
class InvalidAction : public Error {
 public:
  using Error::Error;
};

/// The operation needs an abelian group with a known cyclic factorization.
class UnsupportedGroup : public Error {
 public:
  using Error::Error;
};

/// A constructor was asked for an object whose existence criterion fails.
class NoConstruction : public Error {
 public:
  using Error::Error;
};

/// An exhaustive search would exceed the configured candidate budget.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, unsigned long long required)
      : Error(what), required_(required) {}

  unsigned long long required() const noexcept { return required_; }

 private:
  unsigned long long required_;
};

}  // namespace gsetpn
