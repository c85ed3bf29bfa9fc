#include "glc/error.hpp"

namespace glc {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotAPrimePower: return "NotAPrimePower";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::NotMonic: return "NotMonic";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::InvalidElement: return "InvalidElement";
    case ErrorCode::InvalidArgs: return "InvalidArgs";
    case ErrorCode::NotALattice: return "NotALattice";
    case ErrorCode::NotAnIdeal: return "NotAnIdeal";
    case ErrorCode::NotScalarSaturated: return "NotScalarSaturated";
    case ErrorCode::NotASubgroupPair: return "NotASubgroupPair";
    case ErrorCode::NotIrreducible: return "NotIrreducible";
    case ErrorCode::NotCyclic: return "NotCyclic";
    case ErrorCode::WrongFlavor: return "WrongFlavor";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::CheckFailed: return "CheckFailed";
  }
  return "Unknown";
}

}  // namespace glc
