#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace glc {

enum class ErrorCode {
  NotAPrimePower,
  DivisionByZero,
  DimensionMismatch,
  DimensionTooLarge,
  SingularMatrix,
  NotMonic,
  CapExceeded,
  InvalidElement,
  InvalidArgs,
  NotALattice,
  NotAnIdeal,
  NotScalarSaturated,
  NotASubgroupPair,
  NotIrreducible,
  NotCyclic,
  WrongFlavor,
  ParseError,
  NotFound,
  /// An internal consistency check or a verified identity failed.
  CheckFailed,
};

std::string_view to_string(ErrorCode code);

/// The single exception type thrown by the library. The code drives the CLI
/// exit status: CheckFailed maps to 1, CapExceeded to 3, everything else
/// to 2.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace glc
