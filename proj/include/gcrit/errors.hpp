#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gcrit {

enum class ErrorKind {
  NonMonotonicGrid,
  NegativeValue,
  BudgetExhausted,
  NonFinite,
  DivergentMoment,
  GridMismatch,
  MonotonicityViolated,
  InconsistentBracket,
  NotSquareIntegrable,
  NoRoot,
  StepFailure,
  BracketFailure,
  DegeneratePotential,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

/// Failure raised by any numerical routine of the toolkit. The kind is the
/// contract-level error name; the message carries the details.
class NumericError : public std::runtime_error {
 public:
  NumericError(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

}  // namespace gcrit
