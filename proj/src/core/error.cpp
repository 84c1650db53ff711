#include "error.hpp"

namespace weil {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Ok: return "Ok";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonPrimeCharacteristic: return "NonPrimeCharacteristic";
    case ErrorCode::ReducibleModulus: return "ReducibleModulus";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::NotABasis: return "NotABasis";
    case ErrorCode::RingMismatch: return "RingMismatch";
    case ErrorCode::UnassignedVariable: return "UnassignedVariable";
    case ErrorCode::DegreeTooHigh: return "DegreeTooHigh";
    case ErrorCode::StepBudgetExceeded: return "StepBudgetExceeded";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NotADivisor: return "NotADivisor";
    case ErrorCode::NotCoprime: return "NotCoprime";
    case ErrorCode::GcdConditionFailed: return "GcdConditionFailed";
    case ErrorCode::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case ErrorCode::NotReducible: return "NotReducible";
    case ErrorCode::CoordinateNotInField: return "CoordinateNotInField";
    case ErrorCode::DegreeExceedsBound: return "DegreeExceedsBound";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace weil
