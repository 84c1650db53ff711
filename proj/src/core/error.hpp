#pragma once

#include <stdexcept>
#include <string>

namespace weil {

// Numeric values are part of the C ABI (see include/weil/weil.h); append only.
enum class ErrorCode : int {
  Ok = 0,
  InvalidArgument = 1,
  NonPrimeCharacteristic = 2,
  ReducibleModulus = 3,
  DivisionByZero = 4,
  NotABasis = 5,
  RingMismatch = 6,
  UnassignedVariable = 7,
  DegreeTooHigh = 8,
  StepBudgetExceeded = 9,
  ParseError = 10,
  NotADivisor = 11,
  NotCoprime = 12,
  GcdConditionFailed = 13,
  SearchBudgetExceeded = 14,
  NotReducible = 15,
  CoordinateNotInField = 16,
  DegreeExceedsBound = 17,
  Unsupported = 18,
  Internal = 19,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace weil
