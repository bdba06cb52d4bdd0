#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "peerrank/aggregate.hpp"
#include "peerrank/types.hpp"

namespace peerrank {

enum class SupervisionMode { None, GroundTruth, ImpartialProfile };

struct TestConfig {
  double alpha = 0.05;
  /// Null-sample count; 0 requests full enumeration of the permutation pairs
  /// (only allowed while m! * n! stays under `enumeration_cap`).
  int k = 100;
  SupervisionMode supervision = SupervisionMode::None;
  std::optional<ReviewProfile> impartial;  // required iff supervision == ImpartialProfile
  std::uint64_t seed = 0;
  int threads = 1;
  std::int64_t enumeration_cap = 1000000;
  /// Rejection attempts per accepted null draw. At identity conflicts the
  /// acceptance rate is about exp(-mu), so the mean draw cost stays small and
  /// this cap only catches near-infeasible inputs.
  long long rejection_budget_per_sample = 1000000;
};

void validate_test_config(const TestConfig& config);

struct TestResult {
  double tau = 0.0;
  std::vector<double> phi;  // null statistic values, in sampling order
  bool reject = false;
  int threshold_index = 0;        // floor(alpha * |phi|) + 1
  double threshold_value = 0.0;   // threshold_index-th smallest element of phi
  double effect_size = 0.0;       // tau / authored_count (0 when nothing authored)
  int authored_count = 0;
  /// (1 + count of phi <= tau) / (1 + |phi|); reported for inspection only,
  /// the decision is the strict order-statistic rule above.
  double quantile_diagnostic = 0.0;
};

/// Sparse authorship matrix: sorted (reviewer, work) pairs.
using AuthorshipEntries = std::vector<std::pair<int, int>>;

/// Precomputes, for every (reviewer, work) pair, the impact of the reviewer's
/// actual ranking on the work's final position relative to a uniformly random
/// ranking. The test statistic for any authorship matrix is then a sum of the
/// cached per-pair deltas, so the whole null multiset reuses one precompute.
///
/// Deltas are kept as integer numerators over a common denominator (mu! for
/// exact enumeration), making statistic comparisons exact.
class StatisticEvaluator {
 public:
  StatisticEvaluator(const ReviewProfile& actual, const Assignment& assignment, const AggregationRule& rule,
                     const std::optional<ReviewProfile>& supervision, const ExpectationOptions& opts = {},
                     int threads = 1);

  double statistic(const AuthorshipEntries& entries) const;
  std::int64_t statistic_numerator(const AuthorshipEntries& entries) const;
  std::int64_t denominator() const { return denominator_; }

 private:
  int n_ = 0;
  std::int64_t denominator_ = 1;
  std::vector<std::int64_t> delta_num_;  // m x n row-major
};

/// Test statistic of the manipulation test: summed impact of each reviewer's
/// ranking on the final standing of their own works, against the uniform
/// baseline. With a supervision profile, every slot except the reviewer under
/// measure is replaced by the impartial ranking.
double compute_statistic(const ReviewProfile& profile, const BinaryMatrix& authorship,
                         const Assignment& assignment, const AggregationRule& rule,
                         const std::optional<ReviewProfile>& supervision = std::nullopt,
                         const ExpectationOptions& opts = {});

/// Multiset of authorship matrices drawn by permuting rows and columns of
/// (C, A) with unbiased shuffles and rejecting pairs whose permuted conflicts
/// collide with the assignment. k = 0 enumerates every permutation pair.
std::vector<AuthorshipEntries> sample_null_matrices(const BinaryMatrix& conflicts,
                                                    const BinaryMatrix& authorship, const Assignment& assignment,
                                                    int k, std::uint64_t seed,
                                                    long long rejection_budget_per_sample = 1000000,
                                                    std::int64_t enumeration_cap = 1000000);

/// Null statistic values, one per sampled matrix, in input order.
std::vector<double> null_distribution(const StatisticEvaluator& evaluator,
                                      const std::vector<AuthorshipEntries>& nulls, int threads = 1);

/// Strict order-statistic decision: reject iff tau < the
/// (floor(alpha*|phi|)+1)-th smallest element of phi.
TestResult decide(double tau, const std::vector<double>& phi, double alpha, int authored_count);

/// End-to-end test on one dataset.
TestResult run_test(const ProblemInstance& inst, const Assignment& assignment, const ReviewProfile& profile,
                    const TestConfig& config);

/// Ranking of each reviewer's assigned works by true quality, best first.
ReviewProfile ground_truth_profile(const ProblemInstance& inst, const Assignment& assignment);

}  // namespace peerrank
