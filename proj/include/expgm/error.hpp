#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace expgm {

enum class ErrorCode {
  ParseError,
  InvalidSpec,
  SingularOverQt,
  DegenerateFamily,
  ReductionDiverges,
  PrecisionExhausted,
  AtSingularT,
  StepCollision,
  SingularProximity,
  ToleranceNotMet,
  NonDecayingTail,
  LoopHitsSingularity,
  CheckFailed,
};

std::string_view to_string(ErrorCode code);

/// Process exit status associated with an error class:
/// 1 parse, 2 precondition, 3 check failure, 4 numerical budget.
int exit_code(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace expgm
