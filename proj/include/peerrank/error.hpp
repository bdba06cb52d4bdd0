#pragma once

#include <stdexcept>
#include <string>

namespace peerrank {

enum class ErrorCode {
  // structural validation
  ShapeMismatch,
  LoadMismatch,
  AuthorshipOutsideConflict,
  RowLoadViolation,
  ColumnLoadViolation,
  ConflictAssigned,
  NotAPermutation,
  UnassignedWorkRanked,
  MissingReviewer,
  SupervisionAssignmentMismatch,
  RankOutOfRange,
  ParseError,
  TopologyDegreeMismatch,
  // infeasibility / sampling budget
  InfeasibleOrRejectionBudgetExhausted,
  RejectionBudgetExhausted,
  EnumerationTooLarge,
  // configuration
  CapExceededWithoutSeed,
  EmptyNullDistribution,
  EmptyMix,
  UnknownPreset,
  InvalidGrid,
  InvalidConfig,
};

const char* to_string(ErrorCode code);

/// Exit code the CLI maps an error category to: 2 validation, 3 budget, 4 config.
int exit_code_for(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace peerrank
