#include "lozenge/errors.hpp"

namespace lozenge {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::OverlappingHoles: return "OverlappingHoles";
    case ErrorCode::BadSlope: return "BadSlope";
    case ErrorCode::NonIntegerIndex: return "NonIntegerIndex";
    case ErrorCode::UnpairableConfiguration: return "UnpairableConfiguration";
    case ErrorCode::InsufficientNodes: return "InsufficientNodes";
    case ErrorCode::IllConditioned: return "IllConditioned";
    case ErrorCode::DegenerateDirection: return "DegenerateDirection";
    case ErrorCode::ExtrapolationTolerance: return "ExtrapolationTolerance";
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::ProbeOverlapsHole: return "ProbeOverlapsHole";
    case ErrorCode::CoincidentPoints: return "CoincidentPoints";
    case ErrorCode::SingularDenominator: return "SingularDenominator";
    case ErrorCode::CenterSingularity: return "CenterSingularity";
    case ErrorCode::CutsIntersect: return "CutsIntersect";
    case ErrorCode::WindowTooSmall: return "WindowTooSmall";
    case ErrorCode::IOFailure: return "IOFailure";
    case ErrorCode::HoleTooLarge: return "HoleTooLarge";
    case ErrorCode::ConfigParse: return "ConfigParse";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::UnsupportedCharge: return "UnsupportedCharge";
  }
  return "Unknown";
}

int exit_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::IllConditioned:
    case ErrorCode::ExtrapolationTolerance:
    case ErrorCode::ZeroDenominator:
    case ErrorCode::SingularDenominator:
      return 3;
    default:
      return 2;
  }
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace lozenge
