#include "peerrank/detect.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "peerrank/parallel.hpp"
#include "peerrank/rng.hpp"

namespace peerrank {

namespace {

constexpr std::uint64_t kNullSamplingTag = 0x6e756c6cull;   // stream tag: null matrices
constexpr std::uint64_t kExpectationTag = 0x65787063ull;    // stream tag: sampled expectations

}  // namespace

void validate_test_config(const TestConfig& config) {
  if (!(config.alpha > 0.0 && config.alpha < 1.0))
    throw Error(ErrorCode::InvalidConfig, "alpha must lie strictly between 0 and 1");
  if (config.k < 0) throw Error(ErrorCode::InvalidConfig, "k must be >= 0");
  if (config.k > 0 && static_cast<int>(std::floor(config.alpha * config.k)) < 1)
    throw Error(ErrorCode::InvalidConfig,
                "k too small: floor(alpha*k) must be >= 1 so the test can ever reject");
  if (config.supervision == SupervisionMode::ImpartialProfile && !config.impartial)
    throw Error(ErrorCode::InvalidConfig, "impartial supervision requested without a profile");
  if (config.threads < 1) throw Error(ErrorCode::InvalidConfig, "threads must be >= 1");
}

StatisticEvaluator::StatisticEvaluator(const ReviewProfile& actual, const Assignment& assignment,
                                       const AggregationRule& rule,
                                       const std::optional<ReviewProfile>& supervision,
                                       const ExpectationOptions& opts, int threads) {
  const int m = assignment.matrix.rows();
  n_ = assignment.matrix.cols();
  const ReviewProfile& reference = supervision ? *supervision : actual;

  // Total scores of the reference profile; per-reviewer base scores subtract
  // that reviewer's own contribution.
  std::vector<double> totals(n_, 0.0);
  for (const Ranking& r : reference.rankings)
    for (int p = 0; p < static_cast<int>(r.order.size()); ++p) totals[r.order[p]] += rule.weight(p + 1);

  denominator_ = factorial_capped(assignment.per_reviewer.empty() ? 0 : static_cast<int>(assignment.per_reviewer[0].size()),
                                  opts.enumeration_cap);
  if (denominator_ > opts.enumeration_cap) denominator_ = opts.sample_count;

  delta_num_.assign(static_cast<std::size_t>(m) * n_, 0);

  parallel_for(m, threads, [&](int i) {
    std::vector<double> base = totals;
    const Ranking& ref_ranking = reference.rankings[i];
    for (int p = 0; p < static_cast<int>(ref_ranking.order.size()); ++p)
      base[ref_ranking.order[p]] -= rule.weight(p + 1);

    const auto expectation =
        detail::expected_position_numerators(base, assignment.per_reviewer[i], rule, opts, i);

    // Positions when reviewer i submits their actual ranking.
    std::vector<double> with_actual = base;
    const Ranking& actual_ranking = actual.rankings[i];
    for (int p = 0; p < static_cast<int>(actual_ranking.order.size()); ++p)
      with_actual[actual_ranking.order[p]] += rule.weight(p + 1);
    const std::vector<int> actual_positions = positions_from_scores(with_actual);

    std::int64_t* row = delta_num_.data() + static_cast<std::size_t>(i) * n_;
    for (int j = 0; j < n_; ++j)
      row[j] = static_cast<std::int64_t>(actual_positions[j]) * expectation.denominator -
               expectation.numerators[j];
  });
}

std::int64_t StatisticEvaluator::statistic_numerator(const AuthorshipEntries& entries) const {
  std::int64_t acc = 0;
  for (auto [i, j] : entries) acc += delta_num_[static_cast<std::size_t>(i) * n_ + j];
  return acc;
}

double StatisticEvaluator::statistic(const AuthorshipEntries& entries) const {
  return static_cast<double>(statistic_numerator(entries)) / static_cast<double>(denominator_);
}

double compute_statistic(const ReviewProfile& profile, const BinaryMatrix& authorship,
                         const Assignment& assignment, const AggregationRule& rule,
                         const std::optional<ReviewProfile>& supervision, const ExpectationOptions& opts) {
  if (supervision) validate_profile(assignment, *supervision);
  StatisticEvaluator evaluator(profile, assignment, rule, supervision, opts);
  return evaluator.statistic(authorship.entries());
}

std::vector<AuthorshipEntries> sample_null_matrices(const BinaryMatrix& conflicts,
                                                    const BinaryMatrix& authorship, const Assignment& assignment,
                                                    int k, std::uint64_t seed,
                                                    long long rejection_budget_per_sample,
                                                    std::int64_t enumeration_cap) {
  const int m = conflicts.rows();
  const int n = conflicts.cols();
  const auto conflict_entries = conflicts.entries();
  const auto authorship_entries = authorship.entries();

  // A' = L A R inherits A' <= C' elementwise from A <= C, so acceptance only
  // needs the permuted conflicts to stay clear of the assignment.
  auto accepted = [&](const std::vector<int>& row_perm, const std::vector<int>& col_perm) {
    for (auto [i, j] : conflict_entries)
      if (assignment.matrix.at(row_perm[i], col_perm[j])) return false;
    return true;
  };
  auto permuted_authorship = [&](const std::vector<int>& row_perm, const std::vector<int>& col_perm) {
    AuthorshipEntries entries;
    entries.reserve(authorship_entries.size());
    for (auto [i, j] : authorship_entries) entries.emplace_back(row_perm[i], col_perm[j]);
    std::sort(entries.begin(), entries.end());
    return entries;
  };

  std::vector<AuthorshipEntries> out;
  if (k == 0) {
    const std::int64_t fm = factorial_capped(m, enumeration_cap);
    const std::int64_t fn = factorial_capped(n, enumeration_cap);
    if (fm > enumeration_cap || fn > enumeration_cap || fm > enumeration_cap / fn)
      throw Error(ErrorCode::EnumerationTooLarge,
                  "m!*n! exceeds the enumeration cap; use sampled nulls (k > 0)");
    std::vector<int> row_perm(m), col_perm(n);
    std::iota(row_perm.begin(), row_perm.end(), 0);
    do {
      std::iota(col_perm.begin(), col_perm.end(), 0);
      do {
        if (accepted(row_perm, col_perm)) out.push_back(permuted_authorship(row_perm, col_perm));
      } while (std::next_permutation(col_perm.begin(), col_perm.end()));
    } while (std::next_permutation(row_perm.begin(), row_perm.end()));
    if (out.empty()) throw Error(ErrorCode::EmptyNullDistribution, "no permutation pair was accepted");
    return out;
  }

  Rng rng(mix_seed({seed, kNullSamplingTag}));
  out.reserve(k);
  for (int s = 0; s < k; ++s) {
    bool found = false;
    for (long long attempt = 0; attempt < rejection_budget_per_sample; ++attempt) {
      const std::vector<int> row_perm = rng.permutation(m);
      const std::vector<int> col_perm = rng.permutation(n);
      if (accepted(row_perm, col_perm)) {
        out.push_back(permuted_authorship(row_perm, col_perm));
        found = true;
        break;
      }
    }
    if (!found)
      throw Error(ErrorCode::RejectionBudgetExhausted,
                  "null draw " + std::to_string(s) + " rejected " +
                      std::to_string(rejection_budget_per_sample) + " times");
  }
  return out;
}

std::vector<double> null_distribution(const StatisticEvaluator& evaluator,
                                      const std::vector<AuthorshipEntries>& nulls, int threads) {
  if (nulls.empty()) throw Error(ErrorCode::EmptyNullDistribution, "null multiset is empty");
  std::vector<double> phi(nulls.size());
  parallel_for(static_cast<int>(nulls.size()), threads,
               [&](int idx) { phi[idx] = evaluator.statistic(nulls[idx]); });
  return phi;
}

TestResult decide(double tau, const std::vector<double>& phi, double alpha, int authored_count) {
  if (phi.empty()) throw Error(ErrorCode::EmptyNullDistribution, "cannot decide on an empty null multiset");
  TestResult result;
  result.tau = tau;
  result.phi = phi;
  result.authored_count = authored_count;
  result.threshold_index = static_cast<int>(std::floor(alpha * static_cast<double>(phi.size()))) + 1;

  std::vector<double> sorted = phi;
  std::sort(sorted.begin(), sorted.end());
  result.threshold_value = sorted[result.threshold_index - 1];
  result.reject = tau < result.threshold_value;
  result.effect_size = authored_count > 0 ? tau / authored_count : 0.0;

  const auto at_most_tau = std::upper_bound(sorted.begin(), sorted.end(), tau) - sorted.begin();
  result.quantile_diagnostic = static_cast<double>(1 + at_most_tau) / static_cast<double>(1 + sorted.size());
  return result;
}

ReviewProfile ground_truth_profile(const ProblemInstance& inst, const Assignment& assignment) {
  ReviewProfile profile;
  profile.rankings.resize(inst.m);
  for (int i = 0; i < inst.m; ++i) {
    Ranking r;
    r.reviewer = i;
    r.order = assignment.per_reviewer[i];
    std::sort(r.order.begin(), r.order.end(), [&](int a, int b) {
      if (inst.qualities[a] != inst.qualities[b]) return inst.qualities[a] > inst.qualities[b];
      return a < b;
    });
    profile.rankings[i] = std::move(r);
  }
  return profile;
}

TestResult run_test(const ProblemInstance& inst, const Assignment& assignment, const ReviewProfile& profile,
                    const TestConfig& config) {
  validate_instance(inst);
  validate_assignment(inst, assignment);
  validate_profile(assignment, profile);
  validate_test_config(config);

  std::optional<ReviewProfile> supervision;
  if (config.supervision == SupervisionMode::GroundTruth) {
    supervision = ground_truth_profile(inst, assignment);
  } else if (config.supervision == SupervisionMode::ImpartialProfile) {
    try {
      validate_profile(assignment, *config.impartial);
    } catch (const Error& e) {
      throw Error(ErrorCode::SupervisionAssignmentMismatch,
                  std::string("impartial profile does not fit the assignment (") + e.what() + ")");
    }
    supervision = *config.impartial;
  }

  ExpectationOptions opts;
  opts.seed = mix_seed({config.seed, kExpectationTag});
  const AggregationRule rule = AggregationRule::borda(inst.mu);

  StatisticEvaluator evaluator(profile, assignment, rule, supervision, opts, config.threads);
  const auto authored = inst.authorship.entries();
  const double tau = evaluator.statistic(authored);

  const auto nulls = sample_null_matrices(inst.conflicts, inst.authorship, assignment, config.k, config.seed,
                                          config.rejection_budget_per_sample, config.enumeration_cap);
  const std::vector<double> phi = null_distribution(evaluator, nulls, config.threads);

  return decide(tau, phi, config.alpha, static_cast<int>(authored.size()));
}

}  // namespace peerrank
