#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "peerrank/error.hpp"
#include "peerrank/rng.hpp"

namespace peerrank {

/// Reviewer behaviours: the truthful baseline plus the six manipulation
/// families observed in practice.
enum class StrategyKind {
  Truthful,
  Reverse,
  Distance,
  SeeSaw,
  BetterToBottom,
  WorseToBottom,
  TwoXDistance,
};

const char* to_string(StrategyKind kind);
StrategyKind strategy_from_string(const std::string& name);

enum class NoiseSchedule { TopHalfZero, LinearInRank };

/// Perception noise for reviewer evaluations and impartial rankings.
/// None: exact values. Gaussian: one sigma for everyone. PerReviewer: sigma
/// depends on the rank of the reviewer's own work through a schedule.
struct NoiseModel {
  enum class Kind { None, Gaussian, PerReviewer };
  Kind kind = Kind::None;
  double sigma = 0.0;
  NoiseSchedule schedule = NoiseSchedule::TopHalfZero;

  static NoiseModel none() { return {}; }
  static NoiseModel gaussian(double sigma) { return {Kind::Gaussian, sigma, NoiseSchedule::TopHalfZero}; }
  static NoiseModel per_reviewer(NoiseSchedule schedule, double sigma) {
    return {Kind::PerReviewer, sigma, schedule};
  }
};

/// Reviewer-specific noise level from a schedule. `reviewer_rank` is the
/// position of the reviewer's own work in the ground-truth ordering (1 = best).
double noise_level(NoiseSchedule schedule, int reviewer_rank, int n, double sigma);

/// Perceived utilities: values plus i.i.d. Gaussian noise at the reviewer's
/// level. Zero sigma returns the values unchanged without consuming the rng.
std::vector<double> perceive(std::span<const double> values, const NoiseModel& model, int reviewer_rank,
                             int n, Rng& rng);

/// Order the assigned works (parallel arrays of ids and perceived values)
/// according to a strategy. `own_value` is the value of the reviewer's own
/// work; `n` is the total number of works (needed for the See-Saw threshold
/// and the 2x-Distance value reflection). All ties resolve deterministically:
/// equal distances favour the lower-valued work, remaining ties the lower id.
std::vector<int> apply_strategy(StrategyKind kind, double own_value, std::span<const int> works,
                                std::span<const double> values, int n);

/// Non-negative weight per strategy; normalized before sampling.
struct StrategyMix {
  std::vector<std::pair<StrategyKind, double>> weights;

  StrategyMix normalized() const;
};

/// Allocate m reviewers to strategies by independent draws from the mix.
std::vector<StrategyKind> sample_mix(const StrategyMix& mix, int m, std::uint64_t seed);

}  // namespace peerrank
