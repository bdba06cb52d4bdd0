#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "peerrank/detect.hpp"
#include "peerrank/strategy.hpp"
#include "peerrank/types.hpp"

namespace peerrank {

/// Declarative Monte Carlo experiment. One config describes one grid sweep;
/// per-trial seeds derive from (seed, experiment, grid point, trial), so
/// extending a grid never disturbs earlier rows.
struct ExperimentConfig {
  std::string experiment;  // power | gain | noisy_supervision | false_alarm
  ProblemInstance instance;
  std::string instance_name;

  std::optional<StrategyMix> mix;  // strategic agents drawn from this mix...
  std::string mix_name;
  std::optional<StrategyKind> strategy;  // ...or all following one pure strategy

  std::vector<double> truthful_fractions = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  NoiseModel reviewer_noise;  // perception noise for the reviewers themselves

  /// Supervision-noise grid (noisy_supervision; +inf allowed) or evaluation
  /// noise grid (false_alarm).
  std::vector<double> sigma_grid;
  /// Which reviewer-noise setups a false_alarm sweep covers.
  std::vector<NoiseSchedule> schedules = {NoiseSchedule::TopHalfZero, NoiseSchedule::LinearInRank};

  bool with_supervision = true;     // evaluate the ground-truth-supervised test
  bool without_supervision = true;  // evaluate the unsupervised test

  std::vector<int> positions;  // gain sweep; empty means every position 1..n

  double alpha = 0.05;
  int k = 100;
  int trials = 1000;
  std::uint64_t seed = 0;
  int threads = 1;
};

struct ReportRow {
  std::vector<std::pair<std::string, std::string>> grid;  // (column, value) coordinates
  double estimate = 0.0;
  double stderr_ = 0.0;
  long long trials = 0;
};

struct ExperimentReport {
  std::string experiment;
  std::vector<std::string> grid_columns;
  std::vector<ReportRow> rows;
};

/// Expected gain (in final-ordering positions) of a manipulation strategy over
/// the truthful strategy, per ground-truth position of the strategic
/// reviewer's own work, over the randomness of the assignment. A trailing
/// "mean" row reports the gain averaged over the swept positions.
ExperimentReport expected_gain_curve(const ExperimentConfig& config);

/// Rejection rate of the test per (truthful fraction, supervision mode), with
/// strategic reviewers drawn from the mix or following the pure strategy.
ExperimentReport power_experiment(const ExperimentConfig& config);

/// Power per (supervision sigma, truthful fraction) when the impartial
/// rankings come from a random utility model with Gaussian noise; sigma of
/// +inf substitutes uniformly random impartial rankings.
ExperimentReport noisy_supervision_experiment(const ExperimentConfig& config);

/// Rejection rate per (setup, sigma, supervision mode) when reviewer noise
/// depends on the rank of the reviewer's own work; all reviewers truthful
/// unless a strategy is configured. Supervision rankings are sampled at
/// sigma/2.
ExperimentReport false_alarm_experiment(const ExperimentConfig& config);

/// Dispatch on config.experiment.
ExperimentReport run_experiment(const ExperimentConfig& config);

/// One synthetic dataset under a strategy allocation; what cmd_generate writes.
struct SyntheticDataset {
  Assignment assignment;
  ReviewProfile profile;
  std::optional<ReviewProfile> impartial;
};

/// Assignment (uniform, or uniform on a fixed topology when given) plus the
/// profile produced by the allocated strategies on (possibly noisy) perceived
/// values. `impartial_sigma` additionally emits an impartial profile sampled
/// at that noise level (0 = exact ground truth).
SyntheticDataset generate_dataset(const ProblemInstance& inst, const std::optional<StrategyMix>& mix,
                                  const std::optional<StrategyKind>& strategy, double truthful_fraction,
                                  const NoiseModel& reviewer_noise, std::optional<double> impartial_sigma,
                                  std::uint64_t seed, const std::optional<Topology>& topology = std::nullopt);

struct BenchResult {
  int n = 0;
  double seconds = 0.0;
};

/// Wall time of one full test per instance size (C = A = I, lambda = mu = 4,
/// sampled nulls). Reported, never asserted.
std::vector<BenchResult> runtime_bench(const std::vector<int>& n_grid, int k, std::uint64_t seed,
                                       int threads = 1);

}  // namespace peerrank
