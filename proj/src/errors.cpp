#include "ratnerlab/errors.hpp"

namespace ratnerlab {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::NumericalFailure: return "numerical-failure";
    case ErrorKind::NotRealDiagonalizable: return "not-real-diagonalizable";
    case ErrorKind::NotInvariant: return "not-invariant";
    case ErrorKind::NotAnSl2Module: return "not-an-sl2-module";
    case ErrorKind::NumericUnderflow: return "numeric-underflow";
    case ErrorKind::BoundaryDegenerate: return "boundary-degenerate";
    case ErrorKind::NonConvergence: return "non-convergence";
    case ErrorKind::DivergentRegion: return "divergent-region";
    case ErrorKind::MagnitudeOverflow: return "magnitude-overflow";
    case ErrorKind::NoDivergence: return "no-divergence";
    case ErrorKind::FactorizationUndefined: return "factorization-undefined";
    case ErrorKind::CapExceeded: return "cap-exceeded";
    case ErrorKind::BudgetExceeded: return "budget-exceeded";
    case ErrorKind::NotHyperbolic: return "not-hyperbolic";
  }
  return "unknown";
}

bool Error::is_validation() const noexcept {
  switch (kind_) {
    case ErrorKind::InvalidInput:
    case ErrorKind::NotRealDiagonalizable:
    case ErrorKind::NotInvariant:
    case ErrorKind::NotAnSl2Module:
    case ErrorKind::DivergentRegion:
    case ErrorKind::FactorizationUndefined:
    case ErrorKind::NotHyperbolic:
    case ErrorKind::NoDivergence:
    case ErrorKind::BoundaryDegenerate:
      return true;
    default:
      return false;
  }
}

}  // namespace ratnerlab
