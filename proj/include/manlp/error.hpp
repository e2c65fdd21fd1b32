#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace manlp {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Values from different lattices were combined, or a value left its lattice.
class DomainError : public Error {
public:
  using Error::Error;
};

/// An aggregator was applied to the wrong number of arguments.
class ArityError : public Error {
public:
  using Error::Error;
};

/// Two interpretations (or an interpretation and a program) disagree on the symbol set.
class SymbolMismatch : public Error {
public:
  using Error::Error;
};

/// A program violates a structural rule (unknown label, duplicate body atom, ...).
class ValidationError : public Error {
public:
  using Error::Error;
};

/// A positive program was required.
class NotPositiveError : public Error {
public:
  using Error::Error;
};

/// solve_unique / contraction sampling were asked to run on an uncertified program.
class UncertifiedError : public Error {
public:
  using Error::Error;
};

/// Grid enumeration would exceed its point budget.
class BudgetExceeded : public Error {
public:
  BudgetExceeded(const std::string& what, double estimate)
      : Error(what), estimate_(estimate) {}
  double estimate() const noexcept { return estimate_; }

private:
  double estimate_;
};

class ParseError : public Error {
public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
              message),
        line_(line),
        column_(column),
        message_(message) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& message() const noexcept { return message_; }

private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

}  // namespace manlp
