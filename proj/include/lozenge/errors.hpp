#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lozenge {

enum class ErrorCode {
  OverlappingHoles,
  BadSlope,
  NonIntegerIndex,
  UnpairableConfiguration,
  InsufficientNodes,
  IllConditioned,
  DegenerateDirection,
  ExtrapolationTolerance,
  ZeroDenominator,
  ProbeOverlapsHole,
  CoincidentPoints,
  SingularDenominator,
  CenterSingularity,
  CutsIntersect,
  WindowTooSmall,
  IOFailure,
  HoleTooLarge,
  ConfigParse,
  InvalidArgument,
  UnsupportedCharge,
};

std::string_view to_string(ErrorCode code);

// Exit status the CLI maps each code to.
int exit_status(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace lozenge
