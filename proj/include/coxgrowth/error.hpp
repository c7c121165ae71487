#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace coxgrowth {

enum class ErrorCode {
  NotSquare,
  NonSymmetric,
  BadDiagonal,
  BadOffDiagonal,
  ParseError,
  IoError,
  NotSpherical,
  ClassificationFailure,
  GeneratorOutOfRange,
  ResourceLimit,
  OracleBudgetExceeded,
  NotUniform,
  RangeEmpty,
  RequiresMGreaterThan3,
  RankTooSmall,
  DiagramNotComplete,
  HypothesisViolated,
  SingularAtZero,
  NegativeCoefficientDetected,
  ResidueIncomplete,
  DepthExceeded,
  InvalidArgument,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::NonSymmetric: return "NonSymmetric";
    case ErrorCode::BadDiagonal: return "BadDiagonal";
    case ErrorCode::BadOffDiagonal: return "BadOffDiagonal";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::NotSpherical: return "NotSpherical";
    case ErrorCode::ClassificationFailure: return "ClassificationFailure";
    case ErrorCode::GeneratorOutOfRange: return "GeneratorOutOfRange";
    case ErrorCode::ResourceLimit: return "ResourceLimit";
    case ErrorCode::OracleBudgetExceeded: return "OracleBudgetExceeded";
    case ErrorCode::NotUniform: return "NotUniform";
    case ErrorCode::RangeEmpty: return "RangeEmpty";
    case ErrorCode::RequiresMGreaterThan3: return "RequiresMGreaterThan3";
    case ErrorCode::RankTooSmall: return "RankTooSmall";
    case ErrorCode::DiagramNotComplete: return "DiagramNotComplete";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::SingularAtZero: return "SingularAtZero";
    case ErrorCode::NegativeCoefficientDetected: return "NegativeCoefficientDetected";
    case ErrorCode::ResidueIncomplete: return "ResidueIncomplete";
    case ErrorCode::DepthExceeded: return "DepthExceeded";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace coxgrowth
