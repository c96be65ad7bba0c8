#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace spectral_reach {

enum class ErrorCode {
  // envgrid
  RaggedRows,
  UnknownCharacter,
  OpenBorder,
  NoFloor,
  InvalidState,
  InvalidInput,
  // graph / spectral / commute
  GraphDisconnected,
  NotSymmetric,
  ConvergenceFailure,
  DimensionOutOfRange,
  SingularSystem,
  // mds
  NegativeEntry,
  DimensionMismatch,
  // replearn
  NoBiasCells,
  DivergedObjective,
  EmptyDataset,
  DegenerateEigenvalue,
  // shaping
  MissingEmbedding,
  UnreachableGoal,
  InvalidConfig,
  // cli
  GoalIsWall,
  Io,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Broad failure category; the CLI maps these onto process exit codes.
enum class ErrorCategory { Usage, Domain, Numerical };

ErrorCategory category_of(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  ErrorCategory category() const noexcept { return category_of(code_); }

private:
  ErrorCode code_;
};

}  // namespace spectral_reach
