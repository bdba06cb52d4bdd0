#include "peerrank/aggregate.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "peerrank/rng.hpp"

namespace peerrank {

AggregationRule::AggregationRule(std::vector<double> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw Error(ErrorCode::InvalidConfig, "aggregation rule needs at least one weight");
  for (std::size_t p = 1; p < weights_.size(); ++p)
    if (!(weights_[p - 1] < weights_[p]))
      throw Error(ErrorCode::InvalidConfig, "aggregation weights must be strictly increasing");
}

AggregationRule AggregationRule::borda(int mu) {
  std::vector<double> w(mu);
  for (int p = 0; p < mu; ++p) w[p] = p + 1;
  return AggregationRule(std::move(w));
}

std::vector<int> positions_from_scores(const std::vector<double>& scores) {
  const int n = static_cast<int>(scores.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return scores[a] < scores[b]; });
  std::vector<int> positions(n, 0);
  int i = 0;
  while (i < n) {
    int j = i;
    while (j < n && scores[order[j]] == scores[order[i]]) ++j;
    for (int k = i; k < j; ++k) positions[order[k]] = i + 1;  // tied works share the position
    i = j;
  }
  return positions;
}

FinalOrdering aggregate(const ReviewProfile& profile, const AggregationRule& rule, int n_works) {
  FinalOrdering out;
  out.scores.assign(n_works, 0.0);
  for (const Ranking& r : profile.rankings) {
    if (static_cast<int>(r.order.size()) != rule.arity())
      throw Error(ErrorCode::ShapeMismatch, "ranking length " + std::to_string(r.order.size()) +
                                                " does not match rule arity " + std::to_string(rule.arity()));
    for (int p = 0; p < static_cast<int>(r.order.size()); ++p) out.scores[r.order[p]] += rule.weight(p + 1);
  }
  out.positions = positions_from_scores(out.scores);
  return out;
}

std::int64_t factorial_capped(int mu, std::int64_t cap) {
  std::int64_t f = 1;
  for (int i = 2; i <= mu; ++i) {
    f *= i;
    if (f > cap) return cap + 1;
  }
  return f;
}

namespace detail {

UniformExpectation expected_position_numerators(const std::vector<double>& base_scores,
                                                const std::vector<int>& inside, const AggregationRule& rule,
                                                const ExpectationOptions& opts, int reviewer) {
  const int n = static_cast<int>(base_scores.size());
  const int mu = static_cast<int>(inside.size());
  const std::int64_t fact = factorial_capped(mu, opts.enumeration_cap);
  const bool exact = fact <= opts.enumeration_cap;
  if (!exact && !opts.seed)
    throw Error(ErrorCode::CapExceededWithoutSeed,
                "mu! exceeds the enumeration cap and no seed context was provided");
  const std::int64_t draws = exact ? fact : opts.sample_count;

  std::vector<bool> is_inside(n, false);
  for (int j : inside) is_inside[j] = true;

  std::vector<double> fixed_sorted;
  fixed_sorted.reserve(n - mu);
  for (int j = 0; j < n; ++j)
    if (!is_inside[j]) fixed_sorted.push_back(base_scores[j]);
  std::sort(fixed_sorted.begin(), fixed_sorted.end());

  UniformExpectation out;
  out.denominator = draws;
  out.numerators.assign(n, 0);

  std::vector<double> pool;
  pool.reserve(static_cast<std::size_t>(draws) * mu);
  std::vector<double> inside_score(mu);

  // perm[p] = index into `inside` of the work placed at position p+1
  auto tally_ranking = [&](const std::vector<int>& perm) {
    for (int p = 0; p < mu; ++p) inside_score[perm[p]] = base_scores[inside[perm[p]]] + rule.weight(p + 1);
    for (int t = 0; t < mu; ++t) {
      const double s = inside_score[t];
      std::int64_t below = std::lower_bound(fixed_sorted.begin(), fixed_sorted.end(), s) - fixed_sorted.begin();
      for (int u = 0; u < mu; ++u) below += (inside_score[u] < s) ? 1 : 0;
      out.numerators[inside[t]] += 1 + below;
    }
    pool.insert(pool.end(), inside_score.begin(), inside_score.end());
  };

  std::vector<int> perm(mu);
  std::iota(perm.begin(), perm.end(), 0);
  if (exact) {
    do {
      tally_ranking(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
  } else {
    Rng rng(mix_seed({*opts.seed, 0x9e2fu, static_cast<std::uint64_t>(reviewer)}));
    for (std::int64_t s = 0; s < draws; ++s) {
      std::iota(perm.begin(), perm.end(), 0);
      rng.shuffle(perm);
      tally_ranking(perm);
    }
  }

  // Works outside M(i): the fixed part of their position is constant, only the
  // count of moving scores strictly below them varies; the pooled scores give
  // that count summed over all draws in one pass.
  std::sort(pool.begin(), pool.end());
  for (int j = 0; j < n; ++j) {
    if (is_inside[j]) continue;
    const double s = base_scores[j];
    const std::int64_t fixed_below =
        std::lower_bound(fixed_sorted.begin(), fixed_sorted.end(), s) - fixed_sorted.begin();
    const std::int64_t pool_below = std::lower_bound(pool.begin(), pool.end(), s) - pool.begin();
    out.numerators[j] = draws * (1 + fixed_below) + pool_below;
  }
  return out;
}

}  // namespace detail

std::vector<double> expected_positions_under_uniform(int reviewer, const ReviewProfile& others,
                                                     const AggregationRule& rule, const Assignment& assignment,
                                                     const ExpectationOptions& opts) {
  const int n = assignment.matrix.cols();
  std::vector<double> base(n, 0.0);
  for (const Ranking& r : others.rankings) {
    if (r.reviewer == reviewer) continue;
    for (int p = 0; p < static_cast<int>(r.order.size()); ++p) base[r.order[p]] += rule.weight(p + 1);
  }
  const auto ue =
      detail::expected_position_numerators(base, assignment.per_reviewer[reviewer], rule, opts, reviewer);
  std::vector<double> expected(n);
  for (int j = 0; j < n; ++j) expected[j] = static_cast<double>(ue.numerators[j]) / static_cast<double>(ue.denominator);
  return expected;
}

}  // namespace peerrank
