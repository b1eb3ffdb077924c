#include "dcg/error.hpp"

namespace dcg {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonManifold: return "NonManifold";
    case ErrorCode::NotADisk: return "NotADisk";
    case ErrorCode::OrientationConflict: return "OrientationConflict";
    case ErrorCode::BoundaryVertex: return "BoundaryVertex";
    case ErrorCode::EmptyResult: return "EmptyResult";
    case ErrorCode::InvalidTriangle: return "InvalidTriangle";
    case ErrorCode::TriangleInequalityViolated: return "TriangleInequalityViolated";
    case ErrorCode::NotConformal: return "NotConformal";
    case ErrorCode::DegenerateFace: return "DegenerateFace";
    case ErrorCode::NotFlat: return "NotFlat";
    case ErrorCode::InconsistentDevelopment: return "InconsistentDevelopment";
    case ErrorCode::OutOfDisk: return "OutOfDisk";
    case ErrorCode::CoincidentPoints: return "CoincidentPoints";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::ClaimFailed: return "ClaimFailed";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::LineSearchStall: return "LineSearchStall";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::DegenerateSample: return "DegenerateSample";
    case ErrorCode::InsufficientValidTrials: return "InsufficientValidTrials";
    case ErrorCode::FormatError: return "FormatError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace dcg
