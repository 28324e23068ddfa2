#include "qgrav/errors.hpp"

namespace qgrav {

std::string_view error_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::InvalidTarget: return "InvalidTarget";
    case ErrorKind::NonpositiveInformation: return "NonpositiveInformation";
    case ErrorKind::SingularWithoutPrior: return "SingularWithoutPrior";
    case ErrorKind::Indeterminate: return "Indeterminate";
    case ErrorKind::GridUnderResolved: return "GridUnderResolved";
    case ErrorKind::TruncationTooSmall: return "TruncationTooSmall";
    case ErrorKind::DegenerateTimingBlock: return "DegenerateTimingBlock";
    case ErrorKind::DegenerateBlock: return "DegenerateBlock";
    case ErrorKind::DegenerateTimingSector: return "DegenerateTimingSector";
    case ErrorKind::DegenerateAxis: return "DegenerateAxis";
    case ErrorKind::DegenerateBaseline: return "DegenerateBaseline";
    case ErrorKind::KernelOutOfRange: return "KernelOutOfRange";
    case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::StepTooLarge: return "StepTooLarge";
    case ErrorKind::StepTooSmall: return "StepTooSmall";
    case ErrorKind::QuadratureNotConverged: return "QuadratureNotConverged";
  }
  return "Unknown";
}

bool is_validation_error(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument:
    case ErrorKind::InvalidTarget:
    case ErrorKind::NonpositiveInformation:
    case ErrorKind::SingularWithoutPrior:
    case ErrorKind::Indeterminate:
    case ErrorKind::GridUnderResolved:
    case ErrorKind::TruncationTooSmall:
      return true;
    default:
      return false;
  }
}

}  // namespace qgrav
