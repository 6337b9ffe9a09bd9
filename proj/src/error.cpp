#include "msp/error.hpp"

namespace msp {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::MalformedStage: return "MalformedStage";
    case ErrorKind::DanglingEdge: return "DanglingEdge";
    case ErrorKind::DuplicateEdge: return "DuplicateEdge";
    case ErrorKind::BadLabel: return "BadLabel";
    case ErrorKind::InvalidInstance: return "InvalidInstance";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::TooManyVariables: return "TooManyVariables";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::HeaderMismatch: return "HeaderMismatch";
    case ErrorKind::TooFewClauses: return "TooFewClauses";
    case ErrorKind::UnsupportedClauseWidth: return "UnsupportedClauseWidth";
    case ErrorKind::NotAPath: return "NotAPath";
    case ErrorKind::GenerationFailed: return "GenerationFailed";
    case ErrorKind::PredicateFlaky: return "PredicateFlaky";
    case ErrorKind::PredicateNotHolding: return "PredicateNotHolding";
    case ErrorKind::FormatVersionMismatch: return "FormatVersionMismatch";
    case ErrorKind::HashMismatch: return "HashMismatch";
    case ErrorKind::Io: return "Io";
    case ErrorKind::Usage: return "Usage";
  }
  return "Unknown";
}

}  // namespace msp
