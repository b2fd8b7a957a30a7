#include "trl/error.hpp"

namespace trl {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInfiniteField: return "InfiniteField";
    case ErrorCode::kDivisionByZero: return "DivisionByZero";
    case ErrorCode::kMixedFields: return "MixedFields";
    case ErrorCode::kInvalidField: return "InvalidField";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kBadCharacteristic: return "BadCharacteristic";
    case ErrorCode::kNotSymmetric: return "NotSymmetric";
    case ErrorCode::kWrongShape: return "WrongShape";
    case ErrorCode::kZeroFactor: return "ZeroFactor";
    case ErrorCode::kPreconditionFailed: return "PreconditionFailed";
    case ErrorCode::kUnsupportedField: return "UnsupportedField";
    case ErrorCode::kSingularSubstitution: return "SingularSubstitution";
    case ErrorCode::kBudgetExceeded: return "BudgetExceeded";
    case ErrorCode::kSingularPencil: return "SingularPencil";
    case ErrorCode::kBadEpsilon: return "BadEpsilon";
    case ErrorCode::kDidNotConverge: return "DidNotConverge";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kInternal: return "Internal";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace trl
