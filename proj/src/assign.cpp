#include "peerrank/assign.hpp"

#include <string>
#include <utility>
#include <vector>

#include "peerrank/rng.hpp"

namespace peerrank {

Assignment sample_assignment(const ProblemInstance& inst, std::uint64_t seed,
                             const AssignmentSamplerOptions& opts) {
  Rng rng(seed);

  // Work stubs in a fixed order; reviewer stub r is implicitly r / mu.
  std::vector<int> work_stubs;
  work_stubs.reserve(static_cast<std::size_t>(inst.n) * inst.lambda);
  for (int j = 0; j < inst.n; ++j)
    for (int c = 0; c < inst.lambda; ++c) work_stubs.push_back(j);

  std::vector<std::uint8_t> used(static_cast<std::size_t>(inst.m) * inst.n);
  for (long long attempt = 0; attempt < opts.max_attempts; ++attempt) {
    rng.shuffle(work_stubs);
    std::fill(used.begin(), used.end(), 0);
    bool ok = true;
    for (std::size_t s = 0; s < work_stubs.size() && ok; ++s) {
      const int i = static_cast<int>(s) / inst.mu;
      const int j = work_stubs[s];
      std::uint8_t& slot = used[static_cast<std::size_t>(i) * inst.n + j];
      if (slot || inst.conflicts.at(i, j)) ok = false;  // duplicate or conflicted edge
      slot = 1;
    }
    if (!ok) continue;
    BinaryMatrix matrix(inst.m, inst.n);
    for (std::size_t s = 0; s < work_stubs.size(); ++s)
      matrix.set(static_cast<int>(s) / inst.mu, work_stubs[s], true);
    return Assignment::from_matrix(matrix);
  }
  throw Error(ErrorCode::InfeasibleOrRejectionBudgetExhausted,
              "no valid assignment accepted in " + std::to_string(opts.max_attempts) + " attempts");
}

Assignment sample_assignment_on_topology(const ProblemInstance& inst, const Topology& topology,
                                         std::uint64_t seed, const AssignmentSamplerOptions& opts) {
  validate_topology(inst, topology);
  Rng rng(seed);

  for (long long attempt = 0; attempt < opts.max_attempts; ++attempt) {
    // reviewer i sits at left node reviewer_node[i]; work j at right node work_node[j]
    const std::vector<int> reviewer_node = rng.permutation(inst.m);
    const std::vector<int> work_node = rng.permutation(inst.n);
    std::vector<int> node_reviewer(inst.m), node_work(inst.n);
    for (int i = 0; i < inst.m; ++i) node_reviewer[reviewer_node[i]] = i;
    for (int j = 0; j < inst.n; ++j) node_work[work_node[j]] = j;

    BinaryMatrix matrix(inst.m, inst.n);
    bool ok = true;
    for (auto [l, r] : topology.edges) {
      const int i = node_reviewer[l];
      const int j = node_work[r];
      if (inst.conflicts.at(i, j)) {
        ok = false;
        break;
      }
      matrix.set(i, j, true);
    }
    if (ok) return Assignment::from_matrix(matrix);
  }
  throw Error(ErrorCode::RejectionBudgetExhausted,
              "no conflict-respecting allocation accepted in " + std::to_string(opts.max_attempts) +
                  " attempts");
}

}  // namespace peerrank
