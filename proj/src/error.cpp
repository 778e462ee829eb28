#include "expgm/error.hpp"

namespace expgm {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::SingularOverQt: return "SingularOverQt";
    case ErrorCode::DegenerateFamily: return "DegenerateFamily";
    case ErrorCode::ReductionDiverges: return "ReductionDiverges";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::AtSingularT: return "AtSingularT";
    case ErrorCode::StepCollision: return "StepCollision";
    case ErrorCode::SingularProximity: return "SingularProximity";
    case ErrorCode::ToleranceNotMet: return "ToleranceNotMet";
    case ErrorCode::NonDecayingTail: return "NonDecayingTail";
    case ErrorCode::LoopHitsSingularity: return "LoopHitsSingularity";
    case ErrorCode::CheckFailed: return "CheckFailed";
  }
  return "Unknown";
}

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::InvalidSpec:
      return 1;
    case ErrorCode::SingularOverQt:
    case ErrorCode::DegenerateFamily:
    case ErrorCode::AtSingularT:
    case ErrorCode::SingularProximity:
    case ErrorCode::LoopHitsSingularity:
      return 2;
    case ErrorCode::CheckFailed:
      return 3;
    case ErrorCode::ReductionDiverges:
    case ErrorCode::PrecisionExhausted:
    case ErrorCode::StepCollision:
    case ErrorCode::ToleranceNotMet:
    case ErrorCode::NonDecayingTail:
      return 4;
  }
  return 1;
}

}  // namespace expgm
