#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace extremal {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotAPrimePower : public Error {
 public:
  explicit NotAPrimePower(std::uint64_t q)
      : Error("not a prime power: " + std::to_string(q)) {}
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("inverse of zero in a finite field") {}
};

/// A count (basis size, tuple count, ...) does not fit the integer budget.
class Overflow : public Error {
 public:
  using Error::Error;
};

/// An exhaustive operation would exceed the configured enumeration budget.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::string what, std::uint64_t required, std::uint64_t budget)
      : Error(what + " needs " + std::to_string(required) +
              " operations, budget is " + std::to_string(budget)),
        required_(required),
        budget_(budget) {}

  std::uint64_t required() const { return required_; }
  std::uint64_t budget() const { return budget_; }

 private:
  std::uint64_t required_;
  std::uint64_t budget_;
};

class InvalidTarget : public Error {
 public:
  using Error::Error;
};

class SizeMismatch : public Error {
 public:
  using Error::Error;
};

class DuplicatePoints : public Error {
 public:
  DuplicatePoints() : Error("points must be pairwise distinct") {}
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Parse failure; offset is a byte offset (binary formats) or a line number
/// (text formats).
class MalformedInput : public Error {
 public:
  MalformedInput(const std::string& what, std::uint64_t offset)
      : Error(what + " (at " + std::to_string(offset) + ")"), offset_(offset) {}

  std::uint64_t offset() const { return offset_; }

 private:
  std::uint64_t offset_;
};

/// Default cap on elementary operations for exhaustive modes.
inline constexpr std::uint64_t kDefaultBudget = 100'000'000;

}  // namespace extremal
