#include "gcrit/errors.hpp"

namespace gcrit {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonMonotonicGrid: return "NonMonotonicGrid";
    case ErrorKind::NegativeValue: return "NegativeValue";
    case ErrorKind::BudgetExhausted: return "BudgetExhausted";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::DivergentMoment: return "DivergentMoment";
    case ErrorKind::GridMismatch: return "GridMismatch";
    case ErrorKind::MonotonicityViolated: return "MonotonicityViolated";
    case ErrorKind::InconsistentBracket: return "InconsistentBracket";
    case ErrorKind::NotSquareIntegrable: return "NotSquareIntegrable";
    case ErrorKind::NoRoot: return "NoRoot";
    case ErrorKind::StepFailure: return "StepFailure";
    case ErrorKind::BracketFailure: return "BracketFailure";
    case ErrorKind::DegeneratePotential: return "DegeneratePotential";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

NumericError::NumericError(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

void fail(ErrorKind kind, const std::string& what) { throw NumericError(kind, what); }

}  // namespace gcrit
