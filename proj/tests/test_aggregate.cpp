#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "peerrank/aggregate.hpp"
#include "peerrank/assign.hpp"
#include "peerrank/presets.hpp"
#include "peerrank/rng.hpp"

using namespace peerrank;

namespace {

ReviewProfile random_profile(const Assignment& assignment, Rng& rng) {
  ReviewProfile profile;
  profile.rankings.resize(assignment.matrix.rows());
  for (int i = 0; i < assignment.matrix.rows(); ++i) {
    std::vector<int> order = assignment.per_reviewer[i];
    rng.shuffle(order);
    profile.rankings[i] = Ranking{i, std::move(order)};
  }
  return profile;
}

}  // namespace

TEST_CASE("single reviewer Borda positions follow the ranking") {
  ReviewProfile profile;
  profile.rankings = {{0, {0, 1, 2}}};  // a > b > c
  const FinalOrdering out = aggregate(profile, AggregationRule::borda(3), 3);
  CHECK(out.scores == std::vector<double>{1, 2, 3});
  CHECK(out.positions == std::vector<int>{1, 2, 3});
}

TEST_CASE("opposite rankings tie and share the top position") {
  ReviewProfile profile;
  profile.rankings = {{0, {0, 1}}, {1, {1, 0}}};
  const FinalOrdering out = aggregate(profile, AggregationRule::borda(2), 2);
  CHECK(out.scores == std::vector<double>{3, 3});
  CHECK(out.positions == std::vector<int>{1, 1});
}

TEST_CASE("borda weights are the positions and must increase") {
  const AggregationRule rule = AggregationRule::borda(4);
  CHECK(rule.weight(1) == 1);
  CHECK(rule.weight(4) == 4);
  CHECK_THROWS_AS(AggregationRule({2, 2, 3}), Error);
  CHECK_THROWS_AS(AggregationRule({3, 2, 1}), Error);
}

TEST_CASE("full toy profile matches the brute-force aggregation") {
  const ProblemInstance inst = identity_instance(5, 3);
  Rng rng(77);
  for (int round = 0; round < 25; ++round) {
    const Assignment assignment = sample_assignment(inst, rng.next_u64());
    const ReviewProfile profile = random_profile(assignment, rng);
    const FinalOrdering out = aggregate(profile, AggregationRule::borda(3), inst.n);
    CHECK(out.positions == oracle::aggregate_positions(profile, inst.n));
  }
}

TEST_CASE("positions are the ascending rank of distinct scores") {
  Rng rng(5150);
  for (int round = 0; round < 50; ++round) {
    const int n = 2 + static_cast<int>(rng.next_below(8));
    std::vector<double> scores(n);
    for (double& s : scores) s = static_cast<double>(rng.next_below(1000)) / 7.0;
    const std::vector<int> pos = positions_from_scores(scores);
    CHECK(pos == oracle::positions(scores));
  }
}

TEST_CASE("relabeling works permutes scores and positions identically") {
  const ProblemInstance inst = identity_instance(5, 3);
  Rng rng(31337);
  const Assignment assignment = sample_assignment(inst, 9);
  const ReviewProfile profile = random_profile(assignment, rng);
  const FinalOrdering base = aggregate(profile, AggregationRule::borda(3), inst.n);

  for (int round = 0; round < 10; ++round) {
    const std::vector<int> relabel = rng.permutation(inst.n);
    ReviewProfile renamed = profile;
    for (Ranking& r : renamed.rankings)
      for (int& j : r.order) j = relabel[j];
    const FinalOrdering out = aggregate(renamed, AggregationRule::borda(3), inst.n);
    for (int j = 0; j < inst.n; ++j) {
      CHECK(out.scores[relabel[j]] == base.scores[j]);
      CHECK(out.positions[relabel[j]] == base.positions[j]);
    }
  }
}

TEST_CASE("uniform ranking by the only reviewer puts every work at the mean position") {
  // m = 1, mu = 3: every assigned work sits at expected position 2.
  const Assignment assignment = Assignment::from_lists(3, {{0, 1, 2}});
  ReviewProfile profile;
  profile.rankings = {{0, {0, 1, 2}}};
  const auto expected = expected_positions_under_uniform(0, profile, AggregationRule::borda(3), assignment);
  CHECK(expected == std::vector<double>{2.0, 2.0, 2.0});
}

TEST_CASE("enumeration covers exactly mu! rankings") {
  const std::vector<double> base(6, 0.0);
  const std::vector<int> inside = {0, 1, 2, 3};
  const auto ue = detail::expected_position_numerators(base, inside, AggregationRule::borda(4), {}, 0);
  CHECK(ue.denominator == 24);  // 4!
}

TEST_CASE("frozen three-work expectation example") {
  // n=m=3, lambda=mu=2, C=A=I: the assignment is forced. With reviewer 1
  // ranking 0>2 and reviewer 2 ranking 0>1 fixed, a uniform ranking for
  // reviewer 0 over {1,2} gives expected positions (1, 2.5, 2.5).
  const ProblemInstance inst = identity_instance(3, 2);
  const Assignment assignment = Assignment::from_lists(3, {{1, 2}, {0, 2}, {0, 1}});
  CHECK_NOTHROW(validate_assignment(inst, assignment));
  ReviewProfile profile;
  profile.rankings = {{0, {1, 2}}, {1, {0, 2}}, {2, {0, 1}}};
  const auto expected = expected_positions_under_uniform(0, profile, AggregationRule::borda(2), assignment);
  CHECK(expected == std::vector<double>{1.0, 2.5, 2.5});
}

TEST_CASE("expected positions equal the brute-force enumeration everywhere") {
  Rng rng(2024);
  for (const auto& [n, lambda] : std::vector<std::pair<int, int>>{{3, 2}, {4, 2}, {5, 3}}) {
    const ProblemInstance inst = identity_instance(n, lambda);
    for (int round = 0; round < 10; ++round) {
      const Assignment assignment = sample_assignment(inst, rng.next_u64());
      const ReviewProfile profile = random_profile(assignment, rng);
      for (int i = 0; i < inst.m; ++i) {
        const auto got =
            expected_positions_under_uniform(i, profile, AggregationRule::borda(inst.mu), assignment);
        const auto want = oracle::expected_positions(i, profile, assignment, inst.n);
        REQUIRE(got.size() == want.size());
        for (std::size_t j = 0; j < got.size(); ++j) CHECK(got[j] == doctest::Approx(want[j]).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("enumerated expectation agrees with a Monte Carlo estimate") {
  const ProblemInstance inst = identity_instance(5, 3);
  const Assignment assignment = sample_assignment(inst, 555);
  Rng rng(556);
  const ReviewProfile profile = random_profile(assignment, rng);
  const AggregationRule rule = AggregationRule::borda(3);

  const auto exact = expected_positions_under_uniform(0, profile, rule, assignment);

  // Monte Carlo over uniformly drawn rankings for reviewer 0.
  const int draws = 20000;
  std::vector<double> sums(inst.n, 0.0);
  for (int d = 0; d < draws; ++d) {
    ReviewProfile candidate = profile;
    std::vector<int> order = assignment.per_reviewer[0];
    rng.shuffle(order);
    candidate.rankings[0] = Ranking{0, std::move(order)};
    const FinalOrdering out = aggregate(candidate, rule, inst.n);
    for (int j = 0; j < inst.n; ++j) sums[j] += out.positions[j];
  }
  for (int j = 0; j < inst.n; ++j) {
    const double mc = sums[j] / draws;
    // positions live in [1, n]; 3 standard errors of a bounded variable
    const double se = (inst.n - 1) / 2.0 / std::sqrt(static_cast<double>(draws));
    CHECK(std::abs(mc - exact[j]) <= 3.0 * se + 1e-9);
  }
}

TEST_CASE("sampled path demands a seed above the enumeration cap") {
  const std::vector<double> base(10, 0.0);
  const std::vector<int> inside = {0, 1, 2, 3, 4, 5, 6, 7};  // 8! > 5040
  ExpectationOptions opts;
  try {
    detail::expected_position_numerators(base, inside, AggregationRule::borda(8), opts, 0);
    FAIL("expected CapExceededWithoutSeed");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CapExceededWithoutSeed);
  }
  opts.seed = 7;
  const auto ue = detail::expected_position_numerators(base, inside, AggregationRule::borda(8), opts, 0);
  CHECK(ue.denominator == 10000);
  // every work is inside, so expected positions average to (n+1)/2 overall
  double total = 0.0;
  for (int j = 0; j < 8; ++j) total += static_cast<double>(ue.numerators[j]) / ue.denominator;
  CHECK(total == doctest::Approx(8 * 4.5));
}
