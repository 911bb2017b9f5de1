#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace caraset {

enum class ErrorCode {
  OutsideDisk,
  NotUnimodular,
  DimensionMismatch,
  IdenticalPair,
  InvalidArgument,
  ZeroPolynomial,
  DegreeCapExceeded,
  DuplicateExponent,
  MalformedInput,
  UnableToSample,
  NotThroughOrigin,
  SingularAtOrigin,
  MemberCheckFailed,
  NotSquarefree,
  NotDegreeOneInAxis,
  DenominatorVanishesAtOrigin,
  ExcessDegree,
  ConstraintViolated,
  SamplingStarved,
  InfeasibleNumerics,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::OutsideDisk: return "OutsideDisk";
    case ErrorCode::NotUnimodular: return "NotUnimodular";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::IdenticalPair: return "IdenticalPair";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::DegreeCapExceeded: return "DegreeCapExceeded";
    case ErrorCode::DuplicateExponent: return "DuplicateExponent";
    case ErrorCode::MalformedInput: return "MalformedInput";
    case ErrorCode::UnableToSample: return "UnableToSample";
    case ErrorCode::NotThroughOrigin: return "NotThroughOrigin";
    case ErrorCode::SingularAtOrigin: return "SingularAtOrigin";
    case ErrorCode::MemberCheckFailed: return "MemberCheckFailed";
    case ErrorCode::NotSquarefree: return "NotSquarefree";
    case ErrorCode::NotDegreeOneInAxis: return "NotDegreeOneInAxis";
    case ErrorCode::DenominatorVanishesAtOrigin: return "DenominatorVanishesAtOrigin";
    case ErrorCode::ExcessDegree: return "ExcessDegree";
    case ErrorCode::ConstraintViolated: return "ConstraintViolated";
    case ErrorCode::SamplingStarved: return "SamplingStarved";
    case ErrorCode::InfeasibleNumerics: return "InfeasibleNumerics";
  }
  return "Unknown";
}

/// Every failure raised by the library carries the name of its error kind so
/// that front ends can surface it verbatim.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail),
        code_(code),
        detail_(detail) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace caraset
