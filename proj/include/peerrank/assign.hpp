#pragma once

#include <cstdint>

#include "peerrank/types.hpp"

namespace peerrank {

struct AssignmentSamplerOptions {
  /// Rejection attempts before giving up. Acceptance is near 1 at the
  /// densities this toolkit targets (sparse conflicts such as C = I).
  long long max_attempts = 100000;
};

/// Uniform draw over all valid assignments for (C, lambda, mu) via the
/// configuration model: pair lambda stub copies of each work with mu stub
/// copies of each reviewer through one unbiased shuffle, rejecting draws with
/// duplicate or conflicted edges. Conditional on acceptance the draw is
/// exactly uniform over simple conflict-free biregular graphs.
Assignment sample_assignment(const ProblemInstance& inst, std::uint64_t seed,
                             const AssignmentSamplerOptions& opts = {});

/// Uniform allocation of reviewers and works onto the nodes of a fixed
/// bipartite structure T: independent uniform row and column permutations,
/// rejected until the induced assignment respects the conflict matrix.
Assignment sample_assignment_on_topology(const ProblemInstance& inst, const Topology& topology,
                                         std::uint64_t seed, const AssignmentSamplerOptions& opts = {});

}  // namespace peerrank
