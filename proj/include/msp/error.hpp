#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace msp {

enum class ErrorKind {
  MalformedStage,
  DanglingEdge,
  DuplicateEdge,
  BadLabel,
  InvalidInstance,
  BudgetExceeded,
  TooManyVariables,
  ParseError,
  HeaderMismatch,
  TooFewClauses,
  UnsupportedClauseWidth,
  NotAPath,
  GenerationFailed,
  PredicateFlaky,
  PredicateNotHolding,
  FormatVersionMismatch,
  HashMismatch,
  Io,
  Usage,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every recoverable failure in the library is reported through this type;
/// callers switch on kind() rather than on a type hierarchy.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace msp
