#include "lemni/error.hpp"

namespace lemni {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::CenterSingular: return "CenterSingular";
    case ErrorCode::LineThroughCenter: return "LineThroughCenter";
    case ErrorCode::Concentric: return "Concentric";
    case ErrorCode::DegenerateRay: return "DegenerateRay";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::OutsideLobe: return "OutsideLobe";
    case ErrorCode::NotOnCurve: return "NotOnCurve";
    case ErrorCode::TooManyFoci: return "TooManyFoci";
    case ErrorCode::NoSolution: return "NoSolution";
    case ErrorCode::NoChord: return "NoChord";
    case ErrorCode::OutOfReach: return "OutOfReach";
    case ErrorCode::UndefinedCenter: return "UndefinedCenter";
    case ErrorCode::DoublePoint: return "DoublePoint";
    case ErrorCode::EmptyTrace: return "EmptyTrace";
    case ErrorCode::SingularPoint: return "SingularPoint";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::OpenContour: return "OpenContour";
    case ErrorCode::UnknownPreset: return "UnknownPreset";
  }
  return "Unknown";
}

}  // namespace lemni
