#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qgrav {

/// Failure modes raised by the library. Each kind maps to a stable name used
/// in CLI diagnostics and verification records.
enum class ErrorKind {
  // validation: the caller supplied inputs outside an operation's domain
  InvalidArgument,
  InvalidTarget,
  NonpositiveInformation,
  SingularWithoutPrior,
  Indeterminate,
  GridUnderResolved,
  TruncationTooSmall,
  // numerical: the inputs were admissible but the geometry or the numerics
  // did not cooperate
  DegenerateTimingBlock,
  DegenerateBlock,
  DegenerateTimingSector,
  DegenerateAxis,
  DegenerateBaseline,
  KernelOutOfRange,
  ConvergenceFailure,
  StepTooLarge,
  StepTooSmall,
  QuadratureNotConverged,
};

std::string_view error_name(ErrorKind kind) noexcept;

/// True for kinds that signal bad inputs (CLI exit code 1); false for
/// numerical failures (exit code 2).
bool is_validation_error(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_name(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qgrav
