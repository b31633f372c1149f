#include "jks/errors.hpp"

namespace jks {

const char* error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ZeroDenominator: return "ZeroDenominator";
    case ErrorKind::SingularBasis: return "SingularBasis";
    case ErrorKind::BadConstantTerm: return "BadConstantTerm";
    case ErrorKind::HasLoop: return "HasLoop";
    case ErrorKind::HasOrientedCycle: return "HasOrientedCycle";
    case ErrorKind::Disconnected: return "Disconnected";
    case ErrorKind::UnknownVertex: return "UnknownVertex";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::NonRegularStability: return "NonRegularStability";
    case ErrorKind::DegenerateRCharges: return "DegenerateRCharges";
    case ErrorKind::NotSumRegular: return "NotSumRegular";
    case ErrorKind::NotATree: return "NotATree";
    case ErrorKind::BadCutoff: return "BadCutoff";
    case ErrorKind::CutoffTooSmall: return "CutoffTooSmall";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

}  // namespace jks
