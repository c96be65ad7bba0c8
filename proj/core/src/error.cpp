#include "spectral_reach/error.hpp"

namespace spectral_reach {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::RaggedRows: return "RaggedRows";
    case ErrorCode::UnknownCharacter: return "UnknownCharacter";
    case ErrorCode::OpenBorder: return "OpenBorder";
    case ErrorCode::NoFloor: return "NoFloor";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::GraphDisconnected: return "GraphDisconnected";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::DimensionOutOfRange: return "DimensionOutOfRange";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::NegativeEntry: return "NegativeEntry";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NoBiasCells: return "NoBiasCells";
    case ErrorCode::DivergedObjective: return "DivergedObjective";
    case ErrorCode::EmptyDataset: return "EmptyDataset";
    case ErrorCode::DegenerateEigenvalue: return "DegenerateEigenvalue";
    case ErrorCode::MissingEmbedding: return "MissingEmbedding";
    case ErrorCode::UnreachableGoal: return "UnreachableGoal";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::GoalIsWall: return "GoalIsWall";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

ErrorCategory category_of(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::GraphDisconnected:
    case ErrorCode::NoBiasCells:
    case ErrorCode::UnreachableGoal:
    case ErrorCode::GoalIsWall:
    case ErrorCode::MissingEmbedding:
    case ErrorCode::InvalidState:
      return ErrorCategory::Domain;
    case ErrorCode::ConvergenceFailure:
    case ErrorCode::SingularSystem:
    case ErrorCode::DivergedObjective:
    case ErrorCode::DegenerateEigenvalue:
      return ErrorCategory::Numerical;
    default:
      return ErrorCategory::Usage;
  }
}

}  // namespace spectral_reach
