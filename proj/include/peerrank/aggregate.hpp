#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "peerrank/types.hpp"

namespace peerrank {

/// Positional scoring rule: weight(p) is the score a work collects for being
/// at position p (1-based, best first) in one reviewer's ranking. Weights are
/// strictly increasing, so smaller totals are better. Borda uses weight(p)=p.
class AggregationRule {
 public:
  explicit AggregationRule(std::vector<double> weights);

  static AggregationRule borda(int mu);

  double weight(int position) const { return weights_[position - 1]; }
  int arity() const { return static_cast<int>(weights_.size()); }

 private:
  std::vector<double> weights_;
};

/// Aggregated outcome: total positional score per work and final shared-tie
/// position per work (competition ranking: 1 + count of strictly smaller scores).
struct FinalOrdering {
  std::vector<double> scores;
  std::vector<int> positions;
};

/// Competition positions from totals; tied scores share a position.
std::vector<int> positions_from_scores(const std::vector<double>& scores);

FinalOrdering aggregate(const ReviewProfile& profile, const AggregationRule& rule, int n_works);

struct ExpectationOptions {
  /// Exact enumeration whenever mu! does not exceed this cap (7! by default).
  std::int64_t enumeration_cap = 5040;
  /// Sample count for the deterministic pseudo-random estimate above the cap.
  int sample_count = 10000;
  /// Seed context required for the sampled path; each reviewer derives its own
  /// stream from (seed, reviewer), so results do not depend on evaluation order.
  std::optional<std::uint64_t> seed;
};

/// Exact per-work expected final positions when reviewer `reviewer`'s ranking
/// is replaced by a uniformly random ranking of their assigned works, all other
/// rankings held fixed at `others` (the entry for `reviewer` is ignored).
/// Returns one value per work: works outside M(i) shift too when scores inside
/// M(i) move. Above the enumeration cap a fixed-size deterministic sample is
/// averaged instead; this requires ExpectationOptions::seed.
std::vector<double> expected_positions_under_uniform(int reviewer, const ReviewProfile& others,
                                                     const AggregationRule& rule, const Assignment& assignment,
                                                     const ExpectationOptions& opts = {});

/// mu! clamped into [1, cap+1]; values above the cap report cap+1.
std::int64_t factorial_capped(int mu, std::int64_t cap);

namespace detail {

/// Expected positions kept as exact integer numerators over a common
/// denominator (the number of enumerated or sampled rankings), so downstream
/// comparisons between statistic values are free of accumulation error.
struct UniformExpectation {
  std::int64_t denominator = 1;
  std::vector<std::int64_t> numerators;  // per work: denominator * expected position
};

/// Core of expected_positions_under_uniform, operating on precomputed base
/// scores (all reviewers' contributions except the one being replaced).
UniformExpectation expected_position_numerators(const std::vector<double>& base_scores,
                                                const std::vector<int>& inside, const AggregationRule& rule,
                                                const ExpectationOptions& opts, int reviewer);

}  // namespace detail

}  // namespace peerrank
