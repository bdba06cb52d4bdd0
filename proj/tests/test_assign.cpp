#include <doctest.h>

#include <map>

#include "oracles.hpp"
#include "peerrank/assign.hpp"
#include "peerrank/presets.hpp"
#include "peerrank/rng.hpp"
#include "stat_util.hpp"

using namespace peerrank;

namespace {

std::string key_of(const Assignment& assignment) {
  std::string key;
  for (auto [i, j] : assignment.matrix.entries()) {
    key += std::to_string(i) + ":" + std::to_string(j) + ";";
  }
  return key;
}

ProblemInstance zero_conflict_instance(int n, int lambda) {
  ProblemInstance inst = identity_instance(n, lambda);
  inst.conflicts = BinaryMatrix(n, n);
  inst.authorship = BinaryMatrix(n, n);
  return inst;
}

}  // namespace

TEST_CASE("three-work diagonal instance has two matchings at equal frequency") {
  const ProblemInstance inst = identity_instance(3, 1);
  const auto valid = oracle::enumerate_valid_assignments(inst);
  REQUIRE(valid.size() == 2);  // the two derangements of three items

  std::map<std::string, long long> counts;
  Rng seeds(99);
  const int draws = 10000;
  for (int d = 0; d < draws; ++d) {
    const Assignment a = sample_assignment(inst, seeds.next_u64());
    CHECK_NOTHROW(validate_assignment(inst, a));
    ++counts[key_of(a)];
  }
  REQUIRE(counts.size() == 2);
  for (const auto& [key, count] : counts) {
    const double freq = static_cast<double>(count) / draws;
    CHECK(std::abs(freq - 0.5) <= 3.0 * statutil::binomial_se(0.5, draws));
  }
}

TEST_CASE("all-ones conflicts are infeasible") {
  ProblemInstance inst = identity_instance(3, 1);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) inst.conflicts.set(i, j, true);
  AssignmentSamplerOptions opts;
  opts.max_attempts = 200;
  try {
    sample_assignment(inst, 1, opts);
    FAIL("expected InfeasibleOrRejectionBudgetExhausted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InfeasibleOrRejectionBudgetExhausted);
  }
}

TEST_CASE("game-size draws satisfy loads and avoid the diagonal") {
  const ProblemInstance inst = identity_instance(20, 4);
  Rng seeds(4242);
  for (int d = 0; d < 20; ++d) {
    const Assignment a = sample_assignment(inst, seeds.next_u64());
    CHECK_NOTHROW(validate_assignment(inst, a));
    for (int i = 0; i < 20; ++i) CHECK_FALSE(a.matrix.at(i, i));
  }
}

TEST_CASE("identical seeds reproduce identical assignments") {
  const ProblemInstance inst = identity_instance(20, 4);
  CHECK(key_of(sample_assignment(inst, 31)) == key_of(sample_assignment(inst, 31)));
  CHECK(key_of(sample_assignment(inst, 31)) != key_of(sample_assignment(inst, 32)));
}

TEST_CASE("sampler matches the uniform distribution on enumerable instances") {
  std::vector<ProblemInstance> family = {
      identity_instance(3, 1),      identity_instance(4, 1),      identity_instance(4, 2),
      zero_conflict_instance(2, 1), zero_conflict_instance(3, 2), zero_conflict_instance(4, 2),
  };
  Rng seeds(181);
  for (const ProblemInstance& inst : family) {
    const auto valid = oracle::enumerate_valid_assignments(inst);
    REQUIRE(valid.size() >= 1);
    std::map<std::string, long long> counts;
    for (const BinaryMatrix& matrix : valid) counts[key_of(Assignment::from_matrix(matrix))] = 0;

    const int draws = 12000;
    for (int d = 0; d < draws; ++d) {
      const std::string key = key_of(sample_assignment(inst, seeds.next_u64()));
      REQUIRE(counts.count(key) == 1);  // never outside the valid set
      ++counts[key];
    }
    if (valid.size() == 1) continue;
    std::vector<long long> observed;
    for (const auto& [key, count] : counts) observed.push_back(count);
    const double stat = statutil::chi_square_uniform(observed, draws);
    CHECK(statutil::chi_square_sf(stat, static_cast<int>(observed.size()) - 1) > 0.001);
  }
}

TEST_CASE("topology sampler reproduces the structure and the uniform allocation") {
  const ProblemInstance inst = identity_instance(3, 1);
  Topology matching;
  matching.left_nodes = 3;
  matching.right_nodes = 3;
  matching.edges = {{0, 0}, {1, 1}, {2, 2}};

  SUBCASE("no conflicts: every allocation is accepted and isomorphic to T") {
    ProblemInstance free = zero_conflict_instance(3, 1);
    const Assignment a = sample_assignment_on_topology(free, matching, 5);
    CHECK_NOTHROW(validate_assignment(free, a));
    CHECK(a.matrix.entries().size() == 3);  // still a perfect matching
  }

  SUBCASE("diagonal conflicts leave the two derangements, uniformly") {
    std::map<std::string, long long> counts;
    Rng seeds(7);
    const int draws = 10000;
    for (int d = 0; d < draws; ++d) {
      const Assignment a = sample_assignment_on_topology(inst, matching, seeds.next_u64());
      CHECK_NOTHROW(validate_assignment(inst, a));
      ++counts[key_of(a)];
    }
    REQUIRE(counts.size() == 2);
    for (const auto& [key, count] : counts)
      CHECK(std::abs(static_cast<double>(count) / draws - 0.5) <= 3.0 * statutil::binomial_se(0.5, draws));
  }

  SUBCASE("degree mismatches are rejected") {
    Topology bad = matching;
    bad.edges.push_back({0, 1});  // left node 0 now has degree mu+1
    try {
      sample_assignment_on_topology(inst, bad, 1);
      FAIL("expected TopologyDegreeMismatch");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::TopologyDegreeMismatch);
    }
  }
}
