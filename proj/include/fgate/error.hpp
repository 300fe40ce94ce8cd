#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fgate {

enum class ErrorCode {
  NonPositiveDistance,
  NonPositiveHorizon,
  NonPositiveStep,
  NonUnitInitialState,
  StepTooCoarse,
  InvalidValue,
  SingularPosition,
  NonHermitianInput,
  NormDrift,
  UndefinedPhase,
  NoCrossing,
  ZeroState,
  OutOfRange,
  ParseError,
  SpecError,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonPositiveDistance: return "NonPositiveDistance";
    case ErrorCode::NonPositiveHorizon: return "NonPositiveHorizon";
    case ErrorCode::NonPositiveStep: return "NonPositiveStep";
    case ErrorCode::NonUnitInitialState: return "NonUnitInitialState";
    case ErrorCode::StepTooCoarse: return "StepTooCoarse";
    case ErrorCode::InvalidValue: return "InvalidValue";
    case ErrorCode::SingularPosition: return "SingularPosition";
    case ErrorCode::NonHermitianInput: return "NonHermitianInput";
    case ErrorCode::NormDrift: return "NormDrift";
    case ErrorCode::UndefinedPhase: return "UndefinedPhase";
    case ErrorCode::NoCrossing: return "NoCrossing";
    case ErrorCode::ZeroState: return "ZeroState";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SpecError: return "SpecError";
  }
  return "Unknown";
}

/// Exception carrying a machine-readable code next to the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fgate
