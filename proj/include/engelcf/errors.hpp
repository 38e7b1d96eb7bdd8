#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace engelcf {

// Three families, mapped one-to-one onto CLI exit codes 2, 3 and 4.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Input that violates a documented precondition.
class ValidationError : public Error {
  public:
    using Error::Error;
};

/// A computation would exceed the configured bit budget.
class BudgetExceeded : public Error {
  public:
    using Error::Error;
};

/// An internal identity failed; always an implementation bug.
class InvariantViolation : public Error {
  public:
    using Error::Error;
};

class IndexedValidationError : public ValidationError {
  public:
    IndexedValidationError(const std::string& what, std::size_t index)
        : ValidationError(what + " at index " + std::to_string(index)), index_(index) {}
    std::size_t index() const noexcept { return index_; }

  private:
    std::size_t index_;
};

class ZeroCoefficient : public IndexedValidationError {
  public:
    explicit ZeroCoefficient(std::size_t index)
        : IndexedValidationError("zero partial quotient", index) {}
};

class TrailingZero : public ValidationError {
  public:
    explicit TrailingZero(const std::string& what = "trailing zero partial quotient")
        : ValidationError(what) {}
};

class DivisibilityViolation : public IndexedValidationError {
  public:
    explicit DivisibilityViolation(std::size_t index)
        : IndexedValidationError("x_{n-1}^2 does not divide x_n", index) {}
};

class InexactDivision : public IndexedValidationError {
  public:
    explicit InexactDivision(std::size_t index)
        : IndexedValidationError("inexact division in recurrence", index) {}
};

class NegativeGap : public IndexedValidationError {
  public:
    explicit NegativeGap(std::size_t index)
        : IndexedValidationError("c_{k+1} - 2 c_k < 0", index) {}
};

class ClassMismatch : public ValidationError {
  public:
    using ValidationError::ValidationError;
};

class DegenerateRoot : public ValidationError {
  public:
    using ValidationError::ValidationError;
};

class ParseError : public ValidationError {
  public:
    using ValidationError::ValidationError;
};

class BitBudgetExceeded : public BudgetExceeded {
  public:
    using BudgetExceeded::BudgetExceeded;
};

class IdentityViolation : public InvariantViolation {
  public:
    IdentityViolation(const std::string& what, std::size_t index)
        : InvariantViolation(what + " at index " + std::to_string(index)), index_(index) {}
    std::size_t index() const noexcept { return index_; }

  private:
    std::size_t index_;
};

}  // namespace engelcf
