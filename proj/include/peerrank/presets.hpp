#pragma once

#include <string>
#include <vector>

#include "peerrank/strategy.hpp"
#include "peerrank/types.hpp"

namespace peerrank {

/// Identity-conflict instance: n works = n reviewers, C = A = I, qualities are
/// the distinct integers 1..n (higher is better).
ProblemInstance identity_instance(int n, int lambda);

/// Named instance presets: "game20" (n=m=20, lambda=mu=4) and
/// "toy5" (n=m=5, lambda=mu=3).
ProblemInstance instance_preset(const std::string& name);

/// Named strategy mixes: "round1".."round5" hold the observed proportions of
/// manipulation strategies per game round; "round1_truthful".."round5_truthful"
/// additionally fold the unclassified participants in as truthful reviewers.
StrategyMix mix_preset(const std::string& name);

std::vector<std::string> instance_preset_names();
std::vector<std::string> mix_preset_names();

}  // namespace peerrank
