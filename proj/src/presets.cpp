#include "peerrank/presets.hpp"

#include <array>

namespace peerrank {

ProblemInstance identity_instance(int n, int lambda) {
  ProblemInstance inst;
  inst.n = inst.m = n;
  inst.lambda = inst.mu = lambda;
  inst.conflicts = BinaryMatrix::identity(n);
  inst.authorship = BinaryMatrix::identity(n);
  inst.qualities.resize(n);
  for (int j = 0; j < n; ++j) inst.qualities[j] = j + 1;
  return inst;
}

ProblemInstance instance_preset(const std::string& name) {
  if (name == "game20") return identity_instance(20, 4);
  if (name == "toy5") return identity_instance(5, 3);
  throw Error(ErrorCode::UnknownPreset, "unknown instance preset '" + name + "'");
}

namespace {

struct RoundMix {
  double reverse, distance, seesaw, better, worse, twox;
  int unclassified;  // participant count, out of 55 subjects
};

// Observed allocation of manipulating participants to strategies, per round.
constexpr std::array<RoundMix, 5> kRounds = {{
    {0.50, 0.37, 0.09, 0.02, 0.02, 0.00, 5},
    {0.33, 0.53, 0.08, 0.04, 0.02, 0.00, 7},
    {0.05, 0.93, 0.02, 0.00, 0.00, 0.00, 4},
    {0.03, 0.96, 0.01, 0.00, 0.00, 0.00, 4},
    {0.06, 0.78, 0.00, 0.00, 0.00, 0.16, 18},
}};

constexpr int kSubjects = 55;

StrategyMix round_mix(int round, bool unclassified_as_truthful) {
  const RoundMix& r = kRounds[round - 1];
  const double classified = unclassified_as_truthful
                                ? static_cast<double>(kSubjects - r.unclassified) / kSubjects
                                : 1.0;
  StrategyMix mix;
  if (unclassified_as_truthful)
    mix.weights.emplace_back(StrategyKind::Truthful, static_cast<double>(r.unclassified) / kSubjects);
  mix.weights.emplace_back(StrategyKind::Reverse, r.reverse * classified);
  mix.weights.emplace_back(StrategyKind::Distance, r.distance * classified);
  mix.weights.emplace_back(StrategyKind::SeeSaw, r.seesaw * classified);
  mix.weights.emplace_back(StrategyKind::BetterToBottom, r.better * classified);
  mix.weights.emplace_back(StrategyKind::WorseToBottom, r.worse * classified);
  mix.weights.emplace_back(StrategyKind::TwoXDistance, r.twox * classified);
  return mix.normalized();
}

}  // namespace

StrategyMix mix_preset(const std::string& name) {
  for (int round = 1; round <= 5; ++round) {
    if (name == "round" + std::to_string(round)) return round_mix(round, false);
    if (name == "round" + std::to_string(round) + "_truthful") return round_mix(round, true);
  }
  throw Error(ErrorCode::UnknownPreset, "unknown mix preset '" + name + "'");
}

std::vector<std::string> instance_preset_names() { return {"game20", "toy5"}; }

std::vector<std::string> mix_preset_names() {
  std::vector<std::string> names;
  for (int round = 1; round <= 5; ++round) {
    names.push_back("round" + std::to_string(round));
    names.push_back("round" + std::to_string(round) + "_truthful");
  }
  return names;
}

}  // namespace peerrank
