#pragma once

#include <stdexcept>
#include <string>

namespace ovs {

enum class ErrorCode {
  ParseError,
  DuplicateName,
  UnknownReference,
  InvalidArcWeight,
  DimensionMismatch,
  NotEnabled,
  SafenessViolation,
  StateBudgetExceeded,
  UnknownPlaceName,
  InvalidBadStateSpec,
  InitialStateForbidden,
  UncontrollableBreach,
  InvalidOverState,
  SupportCapExceeded,
  ExactCoverTooLarge,
  Property3Violated,
  EmptyConstraintSet,
  InitialMarkingViolation,
  VerificationFailure,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DuplicateName: return "DuplicateName";
    case ErrorCode::UnknownReference: return "UnknownReference";
    case ErrorCode::InvalidArcWeight: return "InvalidArcWeight";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotEnabled: return "NotEnabled";
    case ErrorCode::SafenessViolation: return "SafenessViolation";
    case ErrorCode::StateBudgetExceeded: return "StateBudgetExceeded";
    case ErrorCode::UnknownPlaceName: return "UnknownPlaceName";
    case ErrorCode::InvalidBadStateSpec: return "InvalidBadStateSpec";
    case ErrorCode::InitialStateForbidden: return "InitialStateForbidden";
    case ErrorCode::UncontrollableBreach: return "UncontrollableBreach";
    case ErrorCode::InvalidOverState: return "InvalidOverState";
    case ErrorCode::SupportCapExceeded: return "SupportCapExceeded";
    case ErrorCode::ExactCoverTooLarge: return "ExactCoverTooLarge";
    case ErrorCode::Property3Violated: return "Property3Violated";
    case ErrorCode::EmptyConstraintSet: return "EmptyConstraintSet";
    case ErrorCode::InitialMarkingViolation: return "InitialMarkingViolation";
    case ErrorCode::VerificationFailure: return "VerificationFailure";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-checkable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, std::string(to_string(code)) + ": " + what);
}

}  // namespace ovs
