#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lemni {

enum class ErrorCode {
  // geometry
  CenterSingular,
  LineThroughCenter,
  Concentric,
  DegenerateRay,
  InvalidArgument,
  // curves
  OutsideLobe,
  NotOnCurve,
  TooManyFoci,
  // constructions
  NoSolution,
  NoChord,
  OutOfReach,
  UndefinedCenter,
  DoublePoint,
  // tracer
  EmptyTrace,
  SingularPoint,
  NoConvergence,
  OpenContour,
  // frontend
  UnknownPreset,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Exception carrying a machine-checkable error code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace lemni
