#include "peerrank/strategy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace peerrank {

const char* to_string(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::Truthful: return "truthful";
    case StrategyKind::Reverse: return "reverse";
    case StrategyKind::Distance: return "distance";
    case StrategyKind::SeeSaw: return "see-saw";
    case StrategyKind::BetterToBottom: return "better-to-bottom";
    case StrategyKind::WorseToBottom: return "worse-to-bottom";
    case StrategyKind::TwoXDistance: return "2x-distance";
  }
  return "unknown";
}

StrategyKind strategy_from_string(const std::string& name) {
  if (name == "truthful") return StrategyKind::Truthful;
  if (name == "reverse") return StrategyKind::Reverse;
  if (name == "distance") return StrategyKind::Distance;
  if (name == "see-saw" || name == "seesaw") return StrategyKind::SeeSaw;
  if (name == "better-to-bottom") return StrategyKind::BetterToBottom;
  if (name == "worse-to-bottom") return StrategyKind::WorseToBottom;
  if (name == "2x-distance" || name == "two-x-distance") return StrategyKind::TwoXDistance;
  throw Error(ErrorCode::UnknownPreset, "unknown strategy '" + name + "'");
}

double noise_level(NoiseSchedule schedule, int reviewer_rank, int n, double sigma) {
  if (reviewer_rank < 1 || reviewer_rank > n)
    throw Error(ErrorCode::RankOutOfRange,
                "reviewer rank " + std::to_string(reviewer_rank) + " outside 1.." + std::to_string(n));
  switch (schedule) {
    case NoiseSchedule::TopHalfZero:
      return 2 * reviewer_rank <= n ? 0.0 : sigma;
    case NoiseSchedule::LinearInRank:
      return sigma * reviewer_rank / n;
  }
  return sigma;
}

std::vector<double> perceive(std::span<const double> values, const NoiseModel& model, int reviewer_rank,
                             int n, Rng& rng) {
  double sigma = 0.0;
  switch (model.kind) {
    case NoiseModel::Kind::None: sigma = 0.0; break;
    case NoiseModel::Kind::Gaussian: sigma = model.sigma; break;
    case NoiseModel::Kind::PerReviewer: sigma = noise_level(model.schedule, reviewer_rank, n, model.sigma); break;
  }
  std::vector<double> out(values.begin(), values.end());
  if (sigma == 0.0) return out;
  for (double& v : out) v += sigma * rng.next_gaussian();
  return out;
}

namespace {

// Sorts indices of the assigned list by a (key, value, id) triple; every
// strategy below reduces to one such ordering.
struct Entry {
  double key;
  double value;
  int work;
  int idx;
};

std::vector<int> order_by(std::span<const int> works, std::span<const double> values,
                          const std::vector<double>& keys, bool value_tiebreak_ascending) {
  std::vector<Entry> entries(works.size());
  for (std::size_t t = 0; t < works.size(); ++t) entries[t] = {keys[t], values[t], works[t], static_cast<int>(t)};
  std::sort(entries.begin(), entries.end(), [&](const Entry& a, const Entry& b) {
    if (a.key != b.key) return a.key < b.key;
    if (a.value != b.value) return value_tiebreak_ascending ? a.value < b.value : a.value > b.value;
    return a.work < b.work;
  });
  std::vector<int> out(works.size());
  for (std::size_t t = 0; t < works.size(); ++t) out[t] = entries[t].work;
  return out;
}

double reflect(double v, int n) { return std::min(static_cast<double>(n) - v, v - 1.0); }

}  // namespace

std::vector<int> apply_strategy(StrategyKind kind, double own_value, std::span<const int> works,
                                std::span<const double> values, int n) {
  const std::size_t k = works.size();
  std::vector<double> keys(k);

  switch (kind) {
    case StrategyKind::Truthful:
      for (std::size_t t = 0; t < k; ++t) keys[t] = -values[t];
      return order_by(works, values, keys, true);
    case StrategyKind::Reverse:
      for (std::size_t t = 0; t < k; ++t) keys[t] = values[t];
      return order_by(works, values, keys, true);
    case StrategyKind::SeeSaw:
      return apply_strategy(2.0 * own_value > n ? StrategyKind::Reverse : StrategyKind::Truthful, own_value,
                            works, values, n);
    case StrategyKind::Distance:
      // Furthest first; equidistant works favour the lower value, since the
      // higher-valued one is the closer competitor.
      for (std::size_t t = 0; t < k; ++t) keys[t] = -std::abs(values[t] - own_value);
      return order_by(works, values, keys, true);
    case StrategyKind::TwoXDistance: {
      const double own_reflected = reflect(own_value, n);
      std::vector<double> reflected(k);
      for (std::size_t t = 0; t < k; ++t) reflected[t] = reflect(values[t], n);
      for (std::size_t t = 0; t < k; ++t) keys[t] = -std::abs(reflected[t] - own_reflected);
      std::vector<int> order = order_by(works, reflected, keys, true);
      return order;
    }
    case StrategyKind::BetterToBottom:
      // Lower-valued works first in increasing order, then higher-valued works
      // in decreasing order.
      for (std::size_t t = 0; t < k; ++t) keys[t] = values[t] < own_value ? 0.0 : 1.0;
      {
        std::vector<Entry> entries(k);
        for (std::size_t t = 0; t < k; ++t) entries[t] = {keys[t], values[t], works[t], static_cast<int>(t)};
        std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
          if (a.key != b.key) return a.key < b.key;
          if (a.value != b.value) return a.key == 0.0 ? a.value < b.value : a.value > b.value;
          return a.work < b.work;
        });
        std::vector<int> out(k);
        for (std::size_t t = 0; t < k; ++t) out[t] = entries[t].work;
        return out;
      }
    case StrategyKind::WorseToBottom:
      // Higher-valued works first in increasing order, then lower-valued works
      // in decreasing order.
      for (std::size_t t = 0; t < k; ++t) keys[t] = values[t] > own_value ? 0.0 : 1.0;
      {
        std::vector<Entry> entries(k);
        for (std::size_t t = 0; t < k; ++t) entries[t] = {keys[t], values[t], works[t], static_cast<int>(t)};
        std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
          if (a.key != b.key) return a.key < b.key;
          if (a.value != b.value) return a.key == 0.0 ? a.value < b.value : a.value > b.value;
          return a.work < b.work;
        });
        std::vector<int> out(k);
        for (std::size_t t = 0; t < k; ++t) out[t] = entries[t].work;
        return out;
      }
  }
  throw Error(ErrorCode::InvalidConfig, "unhandled strategy");
}

StrategyMix StrategyMix::normalized() const {
  double total = 0.0;
  for (const auto& [kind, w] : weights) {
    if (w < 0.0) throw Error(ErrorCode::EmptyMix, "negative strategy weight");
    total += w;
  }
  if (total <= 0.0) throw Error(ErrorCode::EmptyMix, "strategy mix has no positive weight");
  StrategyMix out;
  for (const auto& [kind, w] : weights)
    if (w > 0.0) out.weights.emplace_back(kind, w / total);
  return out;
}

std::vector<StrategyKind> sample_mix(const StrategyMix& mix, int m, std::uint64_t seed) {
  const StrategyMix norm = mix.normalized();
  std::vector<double> cumulative;
  cumulative.reserve(norm.weights.size());
  double acc = 0.0;
  for (const auto& [kind, w] : norm.weights) {
    acc += w;
    cumulative.push_back(acc);
  }
  cumulative.back() = 1.0;  // guard against rounding at the top bucket

  Rng rng(seed);
  std::vector<StrategyKind> out(m);
  for (int i = 0; i < m; ++i) {
    const double u = rng.next_double();
    std::size_t b = std::lower_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin();
    if (b >= norm.weights.size()) b = norm.weights.size() - 1;
    out[i] = norm.weights[b].first;
  }
  return out;
}

}  // namespace peerrank
