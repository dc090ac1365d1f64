#pragma once

#include <stdexcept>
#include <string>

namespace msr {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero in finite field") {}
};

/// Operands belong to different fields.
class FieldMismatch : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

/// Raised instead of falling back to a probabilistic primitivity answer.
class FactorizationInfeasible : public Error {
 public:
  using Error::Error;
};

/// An exhaustive search would exceed its enumeration budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class ConstructionError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace msr
