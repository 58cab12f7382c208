#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ppforge {

enum class ErrorCode {
  kNotPrime,
  kSizeExceeded,
  kDivisionByZero,
  kFieldMismatch,
  kNotInMu,
  kNotADivisor,
  kPartitionNotDisjoint,
  kNegativeExponent,
  kHypothesesNotSatisfied,
  kBadCongruence,
  kInvalidArgument,
  kParseError,
};

std::string_view error_code_name(ErrorCode code);

/// Typed failure raised by every module. `code()` identifies the contract
/// that was violated; `what()` carries a human readable detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + detail),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ppforge
