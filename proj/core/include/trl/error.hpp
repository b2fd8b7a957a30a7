#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace trl {

enum class ErrorCode {
  kInfiniteField,
  kDivisionByZero,
  kMixedFields,
  kInvalidField,
  kShapeMismatch,
  kBadCharacteristic,
  kNotSymmetric,
  kWrongShape,
  kZeroFactor,
  kPreconditionFailed,
  kUnsupportedField,
  kSingularSubstitution,
  kBudgetExceeded,
  kSingularPencil,
  kBadEpsilon,
  kDidNotConverge,
  kParseError,
  kInternal,
};

std::string_view to_string(ErrorCode code);

// Every failure surfaced by the library carries one of the codes above so the
// CLI can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

}  // namespace trl
