#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace emch {

enum class ErrorCode {
  CoincidentCircles,
  DegenerateRestriction,
  NotTangent,
  PointOnBaseCircle,
  NoRealSolution,
  PointNotOnCircle,
  QuadratureFailure,
  DegenerateTriangle,
  NotConcentric,
  SeriesBlocked,
  NotNested,
  AssumptionViolated,
  NormalizationFailed,
  NotTangentConfiguration,
  ImaginaryMember,
  DegeneratePair,
  NoTangentMember,
  NoRealAp,
  AmbiguousAp,
  NoRealPair,
  NotDoublyTangent,
  InvalidArgument,
  SchemaError,
};

std::string_view to_string(ErrorCode code);

/// Single exception type for the library; `code()` identifies the failure.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace emch
