#pragma once

#include <stdexcept>
#include <string>

namespace gersh {

enum class ErrorCode {
  // data errors
  kParse,
  kDimensionMismatch,
  kNonFinite,
  kPrecondition,
  kNotNormalized,
  kDominanceViolated,
  // numerical failures
  kSingularPencil,
  kIllConditionedB,
  kNoConvergence,
  kNotSimple,
  kNotCertified,
  kNotACluster,
  kCountMismatch,
};

enum class ErrorCategory { kData, kNumerical };

constexpr ErrorCategory category(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse:
    case ErrorCode::kDimensionMismatch:
    case ErrorCode::kNonFinite:
    case ErrorCode::kPrecondition:
    case ErrorCode::kNotNormalized:
    case ErrorCode::kDominanceViolated:
      return ErrorCategory::kData;
    default:
      return ErrorCategory::kNumerical;
  }
}

constexpr const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kNonFinite: return "NonFinite";
    case ErrorCode::kPrecondition: return "PreconditionViolated";
    case ErrorCode::kNotNormalized: return "NotNormalized";
    case ErrorCode::kDominanceViolated: return "DominanceViolated";
    case ErrorCode::kSingularPencil: return "SingularPencil";
    case ErrorCode::kIllConditionedB: return "IllConditionedB";
    case ErrorCode::kNoConvergence: return "NoConvergence";
    case ErrorCode::kNotSimple: return "NotSimple";
    case ErrorCode::kNotCertified: return "NotCertified";
    case ErrorCode::kNotACluster: return "NotACluster";
    case ErrorCode::kCountMismatch: return "CountMismatch";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  ErrorCategory category() const noexcept { return gersh::category(code_); }

 private:
  ErrorCode code_;
};

}  // namespace gersh
