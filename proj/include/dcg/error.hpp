#pragma once

#include <stdexcept>
#include <string>

namespace dcg {

/// Failure categories surfaced by the library. Every thrown dcg::Error
/// carries exactly one of these so callers can branch without parsing
/// messages.
enum class ErrorCode {
  // combinatorial complexes
  NonManifold,
  NotADisk,
  OrientationConflict,
  BoundaryVertex,
  EmptyResult,
  // metrics and embeddings
  InvalidTriangle,
  TriangleInequalityViolated,
  NotConformal,
  DegenerateFace,
  NotFlat,
  InconsistentDevelopment,
  // hyperbolic geometry
  OutOfDisk,
  CoincidentPoints,
  HypothesisViolated,
  ClaimFailed,
  // solver
  NonConvergence,
  LineSearchStall,
  SingularSystem,
  // experiments
  DegenerateSample,
  InsufficientValidTrials,
  // plumbing
  FormatError,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace dcg
