#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ratnerlab {

enum class ErrorKind {
  InvalidInput,
  NumericalFailure,
  NotRealDiagonalizable,
  NotInvariant,
  NotAnSl2Module,
  NumericUnderflow,
  BoundaryDegenerate,
  NonConvergence,
  DivergentRegion,
  MagnitudeOverflow,
  NoDivergence,
  FactorizationUndefined,
  CapExceeded,
  BudgetExceeded,
  NotHyperbolic,
};

std::string_view to_string(ErrorKind kind);

// Single exception type for the library; the kind drives CLI exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  // Validation-type errors (bad arguments, violated preconditions) as
  // opposed to failures of a numerical procedure on valid input.
  bool is_validation() const noexcept;

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) fail(kind, what);
}

}  // namespace ratnerlab
