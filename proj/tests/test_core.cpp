#include <doctest.h>

#include "oracles.hpp"
#include "peerrank/presets.hpp"
#include "peerrank/rng.hpp"
#include "peerrank/types.hpp"

using namespace peerrank;

namespace {

ProblemInstance zero_conflict_instance(int n, int lambda) {
  ProblemInstance inst = identity_instance(n, lambda);
  inst.conflicts = BinaryMatrix(n, n);
  inst.authorship = BinaryMatrix(n, n);
  return inst;
}

}  // namespace

TEST_CASE("validate_instance accepts the game and toy presets") {
  CHECK_NOTHROW(validate_instance(identity_instance(20, 4)));
  CHECK_NOTHROW(validate_instance(identity_instance(5, 3)));
}

TEST_CASE("validate_instance rejects load imbalance") {
  // n=4, m=4, lambda=2, mu=3: 8 != 12
  ProblemInstance inst = identity_instance(4, 2);
  inst.mu = 3;
  try {
    validate_instance(inst);
    FAIL("expected LoadMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::LoadMismatch);
  }
}

TEST_CASE("validate_instance rejects authorship outside conflicts") {
  ProblemInstance inst = identity_instance(3, 1);
  inst.authorship.set(0, 1, true);  // authored but not conflicted
  try {
    validate_instance(inst);
    FAIL("expected AuthorshipOutsideConflict");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::AuthorshipOutsideConflict);
  }
}

TEST_CASE("validate_instance rejects shape mismatches") {
  ProblemInstance inst = identity_instance(3, 1);
  inst.qualities.pop_back();
  try {
    validate_instance(inst);
    FAIL("expected ShapeMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ShapeMismatch);
  }
}

TEST_CASE("validate_assignment examples") {
  ProblemInstance inst = zero_conflict_instance(2, 1);

  SUBCASE("straight matching is valid") {
    const Assignment a = Assignment::from_lists(2, {{0}, {1}});
    CHECK_NOTHROW(validate_assignment(inst, a));
  }
  SUBCASE("conflicted pair is rejected") {
    inst.conflicts.set(0, 0, true);
    const Assignment a = Assignment::from_lists(2, {{0}, {1}});
    try {
      validate_assignment(inst, a);
      FAIL("expected ConflictAssigned");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ConflictAssigned);
    }
  }
  SUBCASE("reviewer holding both works violates the row load") {
    const Assignment a = Assignment::from_lists(2, {{0, 1}, {}});
    try {
      validate_assignment(inst, a);
      FAIL("expected RowLoadViolation");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::RowLoadViolation);
    }
  }
  SUBCASE("column load violations are caught") {
    // row sums fine (1 each) but work 0 reviewed twice
    const Assignment a = Assignment::from_lists(2, {{0}, {0}});
    try {
      validate_assignment(inst, a);
      FAIL("expected ColumnLoadViolation");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ColumnLoadViolation);
    }
  }
}

TEST_CASE("validate_profile examples") {
  const Assignment a = Assignment::from_lists(2, {{0, 1}, {0, 1}});

  ReviewProfile profile;
  profile.rankings = {{0, {0, 1}}, {1, {1, 0}}};
  CHECK_NOTHROW(validate_profile(a, profile));

  SUBCASE("ranking an unassigned work") {
    Assignment a3 = Assignment::from_lists(3, {{0, 1}, {0, 1}});
    ReviewProfile bad = profile;
    bad.rankings[0].order = {0, 2};
    try {
      validate_profile(a3, bad);
      FAIL("expected UnassignedWorkRanked");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::UnassignedWorkRanked);
    }
  }
  SUBCASE("ranking a work twice") {
    ReviewProfile bad = profile;
    bad.rankings[0].order = {0, 0};
    try {
      validate_profile(a, bad);
      FAIL("expected NotAPermutation");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotAPermutation);
    }
  }
  SUBCASE("missing reviewer") {
    ReviewProfile bad;
    bad.rankings = {profile.rankings[0]};
    try {
      validate_profile(a, bad);
      FAIL("expected MissingReviewer");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::MissingReviewer);
    }
  }
}

TEST_CASE("validate_assignment accepts exactly the enumerated valid set") {
  // Every 0/1 matrix on small instances: acceptance must coincide with the
  // definition-based membership predicate.
  std::vector<ProblemInstance> family = {
      identity_instance(3, 1),
      identity_instance(4, 2),
      zero_conflict_instance(3, 2),
      zero_conflict_instance(4, 1),
  };
  for (const ProblemInstance& inst : family) {
    const int cells = inst.m * inst.n;
    long long accepted = 0;
    for (long long mask = 0; mask < (1LL << cells); ++mask) {
      BinaryMatrix matrix(inst.m, inst.n);
      for (int c = 0; c < cells; ++c)
        if (mask & (1LL << c)) matrix.set(c / inst.n, c % inst.n, true);
      bool lib_ok = true;
      try {
        validate_assignment(inst, Assignment::from_matrix(matrix));
      } catch (const Error&) {
        lib_ok = false;
      }
      CHECK(lib_ok == oracle::is_valid_assignment(inst, matrix));
      accepted += lib_ok ? 1 : 0;
    }
    CHECK(accepted == static_cast<long long>(oracle::enumerate_valid_assignments(inst).size()));
  }
}
