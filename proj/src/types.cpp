#include "peerrank/types.hpp"

#include <algorithm>
#include <string>

namespace peerrank {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::LoadMismatch: return "LoadMismatch";
    case ErrorCode::AuthorshipOutsideConflict: return "AuthorshipOutsideConflict";
    case ErrorCode::RowLoadViolation: return "RowLoadViolation";
    case ErrorCode::ColumnLoadViolation: return "ColumnLoadViolation";
    case ErrorCode::ConflictAssigned: return "ConflictAssigned";
    case ErrorCode::NotAPermutation: return "NotAPermutation";
    case ErrorCode::UnassignedWorkRanked: return "UnassignedWorkRanked";
    case ErrorCode::MissingReviewer: return "MissingReviewer";
    case ErrorCode::SupervisionAssignmentMismatch: return "SupervisionAssignmentMismatch";
    case ErrorCode::RankOutOfRange: return "RankOutOfRange";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::TopologyDegreeMismatch: return "TopologyDegreeMismatch";
    case ErrorCode::InfeasibleOrRejectionBudgetExhausted: return "InfeasibleOrRejectionBudgetExhausted";
    case ErrorCode::RejectionBudgetExhausted: return "RejectionBudgetExhausted";
    case ErrorCode::EnumerationTooLarge: return "EnumerationTooLarge";
    case ErrorCode::CapExceededWithoutSeed: return "CapExceededWithoutSeed";
    case ErrorCode::EmptyNullDistribution: return "EmptyNullDistribution";
    case ErrorCode::EmptyMix: return "EmptyMix";
    case ErrorCode::UnknownPreset: return "UnknownPreset";
    case ErrorCode::InvalidGrid: return "InvalidGrid";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
  }
  return "UnknownError";
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ShapeMismatch:
    case ErrorCode::LoadMismatch:
    case ErrorCode::AuthorshipOutsideConflict:
    case ErrorCode::RowLoadViolation:
    case ErrorCode::ColumnLoadViolation:
    case ErrorCode::ConflictAssigned:
    case ErrorCode::NotAPermutation:
    case ErrorCode::UnassignedWorkRanked:
    case ErrorCode::MissingReviewer:
    case ErrorCode::SupervisionAssignmentMismatch:
    case ErrorCode::RankOutOfRange:
    case ErrorCode::ParseError:
    case ErrorCode::TopologyDegreeMismatch:
      return 2;
    case ErrorCode::InfeasibleOrRejectionBudgetExhausted:
    case ErrorCode::RejectionBudgetExhausted:
    case ErrorCode::EnumerationTooLarge:
      return 3;
    case ErrorCode::CapExceededWithoutSeed:
    case ErrorCode::EmptyNullDistribution:
    case ErrorCode::EmptyMix:
    case ErrorCode::UnknownPreset:
    case ErrorCode::InvalidGrid:
    case ErrorCode::InvalidConfig:
      return 4;
  }
  return 1;
}

void validate_instance(const ProblemInstance& inst) {
  if (inst.n <= 0 || inst.m <= 0 || inst.lambda <= 0 || inst.mu <= 0)
    throw Error(ErrorCode::ShapeMismatch, "n, m, lambda, mu must all be positive");
  if (inst.conflicts.rows() != inst.m || inst.conflicts.cols() != inst.n)
    throw Error(ErrorCode::ShapeMismatch, "conflict matrix is not m x n");
  if (inst.authorship.rows() != inst.m || inst.authorship.cols() != inst.n)
    throw Error(ErrorCode::ShapeMismatch, "authorship matrix is not m x n");
  if (static_cast<int>(inst.qualities.size()) != inst.n)
    throw Error(ErrorCode::ShapeMismatch, "qualities vector is not length n");
  if (static_cast<long long>(inst.n) * inst.lambda != static_cast<long long>(inst.m) * inst.mu)
    throw Error(ErrorCode::LoadMismatch,
                "n*lambda = " + std::to_string(static_cast<long long>(inst.n) * inst.lambda) +
                    " but m*mu = " + std::to_string(static_cast<long long>(inst.m) * inst.mu));
  for (int i = 0; i < inst.m; ++i)
    for (int j = 0; j < inst.n; ++j)
      if (inst.authorship.at(i, j) && !inst.conflicts.at(i, j))
        throw Error(ErrorCode::AuthorshipOutsideConflict,
                    "reviewer " + std::to_string(i) + " authors work " + std::to_string(j) +
                        " without a conflict entry");
}

void validate_assignment(const ProblemInstance& inst, const Assignment& assignment) {
  if (assignment.matrix.rows() != inst.m || assignment.matrix.cols() != inst.n)
    throw Error(ErrorCode::ShapeMismatch, "assignment matrix is not m x n");
  if (static_cast<int>(assignment.per_reviewer.size()) != inst.m)
    throw Error(ErrorCode::ShapeMismatch, "per-reviewer lists do not cover all reviewers");
  for (int i = 0; i < inst.m; ++i) {
    if (assignment.matrix.row_sum(i) != inst.mu)
      throw Error(ErrorCode::RowLoadViolation,
                  "reviewer " + std::to_string(i) + " has load " +
                      std::to_string(assignment.matrix.row_sum(i)) + ", expected " + std::to_string(inst.mu));
    for (int j : assignment.per_reviewer[i])
      if (!assignment.matrix.at(i, j))
        throw Error(ErrorCode::ShapeMismatch, "per-reviewer list disagrees with matrix");
  }
  for (int j = 0; j < inst.n; ++j)
    if (assignment.matrix.col_sum(j) != inst.lambda)
      throw Error(ErrorCode::ColumnLoadViolation,
                  "work " + std::to_string(j) + " has " + std::to_string(assignment.matrix.col_sum(j)) +
                      " reviewers, expected " + std::to_string(inst.lambda));
  for (int i = 0; i < inst.m; ++i)
    for (int j = 0; j < inst.n; ++j)
      if (assignment.matrix.at(i, j) && inst.conflicts.at(i, j))
        throw Error(ErrorCode::ConflictAssigned,
                    "reviewer " + std::to_string(i) + " assigned conflicted work " + std::to_string(j));
}

void validate_profile(const Assignment& assignment, const ReviewProfile& profile) {
  const int m = assignment.matrix.rows();
  if (static_cast<int>(profile.rankings.size()) != m)
    throw Error(ErrorCode::MissingReviewer,
                "profile has " + std::to_string(profile.rankings.size()) + " rankings for " +
                    std::to_string(m) + " reviewers");
  for (int i = 0; i < m; ++i) {
    const Ranking& r = profile.rankings[i];
    if (r.reviewer != i)
      throw Error(ErrorCode::MissingReviewer, "ranking at slot " + std::to_string(i) + " belongs to reviewer " +
                                                  std::to_string(r.reviewer));
    const std::vector<int>& assigned = assignment.per_reviewer[i];
    if (r.order.size() != assigned.size())
      throw Error(ErrorCode::NotAPermutation,
                  "reviewer " + std::to_string(i) + " ranked " + std::to_string(r.order.size()) +
                      " works, assigned " + std::to_string(assigned.size()));
    std::vector<int> seen;
    for (int j : r.order) {
      if (j < 0 || j >= assignment.matrix.cols() || !assignment.matrix.at(i, j))
        throw Error(ErrorCode::UnassignedWorkRanked,
                    "reviewer " + std::to_string(i) + " ranked unassigned work " + std::to_string(j));
      seen.push_back(j);
    }
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
      throw Error(ErrorCode::NotAPermutation, "reviewer " + std::to_string(i) + " ranked a work twice");
  }
}

void validate_topology(const ProblemInstance& inst, const Topology& topology) {
  if (topology.left_nodes != inst.m || topology.right_nodes != inst.n)
    throw Error(ErrorCode::TopologyDegreeMismatch, "topology node counts do not match instance");
  std::vector<int> left_deg(topology.left_nodes, 0), right_deg(topology.right_nodes, 0);
  std::vector<std::pair<int, int>> edges = topology.edges;
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    throw Error(ErrorCode::TopologyDegreeMismatch, "duplicate edge in topology");
  for (auto [l, r] : edges) {
    if (l < 0 || l >= topology.left_nodes || r < 0 || r >= topology.right_nodes)
      throw Error(ErrorCode::TopologyDegreeMismatch, "edge endpoint outside node range");
    ++left_deg[l];
    ++right_deg[r];
  }
  for (int l = 0; l < topology.left_nodes; ++l)
    if (left_deg[l] != inst.mu)
      throw Error(ErrorCode::TopologyDegreeMismatch,
                  "left node " + std::to_string(l) + " has degree " + std::to_string(left_deg[l]) +
                      ", expected mu = " + std::to_string(inst.mu));
  for (int r = 0; r < topology.right_nodes; ++r)
    if (right_deg[r] != inst.lambda)
      throw Error(ErrorCode::TopologyDegreeMismatch,
                  "right node " + std::to_string(r) + " has degree " + std::to_string(right_deg[r]) +
                      ", expected lambda = " + std::to_string(inst.lambda));
}

}  // namespace peerrank
