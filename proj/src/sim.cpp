#include "peerrank/sim.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>

#include "peerrank/assign.hpp"
#include "peerrank/format.hpp"
#include "peerrank/parallel.hpp"
#include "peerrank/presets.hpp"
#include "peerrank/rng.hpp"

namespace peerrank {

namespace {

// Experiment ids and stream tags folded into per-trial seeds.
constexpr std::uint64_t kExpPower = 0x706f77ull;
constexpr std::uint64_t kExpGain = 0x6761696eull;
constexpr std::uint64_t kExpNoisySup = 0x6e737570ull;
constexpr std::uint64_t kExpFalseAlarm = 0x66616c6dull;
constexpr std::uint64_t kTagAssign = 1;
constexpr std::uint64_t kTagWho = 2;
constexpr std::uint64_t kTagMix = 3;
constexpr std::uint64_t kTagPerceive = 4;
constexpr std::uint64_t kTagSupervision = 5;
constexpr std::uint64_t kTagTest = 6;

int authored_work(const BinaryMatrix& authorship, int reviewer) {
  for (int j = 0; j < authorship.cols(); ++j)
    if (authorship.at(reviewer, j)) return j;
  return -1;
}

// Ground-truth rank of a work: 1 = best.
int rank_of(const std::vector<double>& qualities, int work) {
  int better = 0;
  for (double q : qualities) better += q > qualities[work] ? 1 : 0;
  return 1 + better;
}

std::vector<StrategyKind> assign_strategies(int m, double truthful_fraction,
                                            const std::optional<StrategyMix>& mix,
                                            const std::optional<StrategyKind>& pure, std::uint64_t trial_seed) {
  const int n_truthful = static_cast<int>(std::llround(truthful_fraction * m));
  const int n_strategic = m - n_truthful;
  Rng rng(mix_seed({trial_seed, kTagWho}));
  const std::vector<int> who = rng.permutation(m);

  std::vector<StrategyKind> kinds(m, StrategyKind::Truthful);
  if (n_strategic > 0) {
    std::vector<StrategyKind> drawn;
    if (pure)
      drawn.assign(n_strategic, *pure);
    else
      drawn = sample_mix(*mix, n_strategic, mix_seed({trial_seed, kTagMix}));
    for (int idx = 0; idx < n_strategic; ++idx) kinds[who[n_truthful + idx]] = drawn[idx];
  }
  return kinds;
}

ReviewProfile build_profile(const ProblemInstance& inst, const Assignment& assignment,
                            const std::vector<StrategyKind>& kinds, const NoiseModel& noise,
                            std::uint64_t trial_seed) {
  ReviewProfile profile;
  profile.rankings.resize(inst.m);
  for (int i = 0; i < inst.m; ++i) {
    const int own = authored_work(inst.authorship, i);
    const double own_value = own >= 0 ? inst.qualities[own] : 0.0;
    const int own_rank = own >= 0 ? rank_of(inst.qualities, own) : inst.n;

    const std::vector<int>& assigned = assignment.per_reviewer[i];
    std::vector<double> values(assigned.size());
    for (std::size_t t = 0; t < assigned.size(); ++t) values[t] = inst.qualities[assigned[t]];

    Rng rng(mix_seed({trial_seed, kTagPerceive, static_cast<std::uint64_t>(i)}));
    const std::vector<double> perceived = perceive(values, noise, own_rank, inst.n, rng);

    const StrategyKind kind = own >= 0 ? kinds[i] : StrategyKind::Truthful;
    profile.rankings[i] = Ranking{i, apply_strategy(kind, own_value, assigned, perceived, inst.n)};
  }
  return profile;
}

// Impartial rankings from the random utility model at the given noise level;
// +inf degrades to uniformly random rankings.
ReviewProfile build_impartial_profile(const ProblemInstance& inst, const Assignment& assignment, double sigma,
                                      std::uint64_t trial_seed) {
  ReviewProfile profile;
  profile.rankings.resize(inst.m);
  const NoiseModel noise = NoiseModel::gaussian(std::isinf(sigma) ? 0.0 : sigma);
  for (int i = 0; i < inst.m; ++i) {
    Rng rng(mix_seed({trial_seed, kTagSupervision, static_cast<std::uint64_t>(i)}));
    std::vector<int> order = assignment.per_reviewer[i];
    if (std::isinf(sigma)) {
      rng.shuffle(order);
    } else {
      std::vector<double> values(order.size());
      for (std::size_t t = 0; t < order.size(); ++t) values[t] = inst.qualities[order[t]];
      const std::vector<double> perceived = perceive(values, noise, 1, inst.n, rng);
      order = apply_strategy(StrategyKind::Truthful, 0.0, order, perceived, inst.n);
    }
    profile.rankings[i] = Ranking{i, std::move(order)};
  }
  return profile;
}

double rate_stderr(long long hits, long long trials) {
  const double p = static_cast<double>(hits) / static_cast<double>(trials);
  return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

void require(bool ok, ErrorCode code, const std::string& message) {
  if (!ok) throw Error(code, message);
}

void validate_common(const ExperimentConfig& config) {
  validate_instance(config.instance);
  require(config.trials >= 1, ErrorCode::InvalidGrid, "trials must be >= 1");
  require(config.k >= 1, ErrorCode::InvalidConfig, "experiments need sampled nulls (k >= 1)");
  require(config.alpha > 0.0 && config.alpha < 1.0, ErrorCode::InvalidConfig, "alpha outside (0,1)");
}

void validate_fractions(const std::vector<double>& fractions) {
  require(!fractions.empty(), ErrorCode::InvalidGrid, "truthful fraction grid is empty");
  for (double f : fractions)
    require(f >= 0.0 && f <= 1.0, ErrorCode::InvalidGrid, "truthful fraction outside [0,1]");
}

std::string mix_label(const ExperimentConfig& config) {
  if (config.strategy) return "-";
  return config.mix_name.empty() ? "custom" : config.mix_name;
}

std::string strategy_label(const ExperimentConfig& config) {
  return config.strategy ? to_string(*config.strategy) : "-";
}

}  // namespace

ExperimentReport power_experiment(const ExperimentConfig& config) {
  validate_common(config);
  validate_fractions(config.truthful_fractions);
  require(config.mix.has_value() != config.strategy.has_value(), ErrorCode::InvalidConfig,
          "provide exactly one of a strategy mix or a pure strategy");
  require(config.with_supervision || config.without_supervision, ErrorCode::InvalidConfig,
          "at least one supervision mode must be enabled");

  const ProblemInstance& inst = config.instance;
  std::vector<SupervisionMode> modes;
  if (config.with_supervision) modes.push_back(SupervisionMode::GroundTruth);
  if (config.without_supervision) modes.push_back(SupervisionMode::None);

  ExperimentReport report;
  report.experiment = "power";
  report.grid_columns = {"mix", "strategy", "truthful_fraction", "supervision"};

  for (std::size_t f_idx = 0; f_idx < config.truthful_fractions.size(); ++f_idx) {
    const double fraction = config.truthful_fractions[f_idx];
    std::vector<std::array<std::uint8_t, 2>> rejects(config.trials, {0, 0});

    parallel_for(config.trials, config.threads, [&](int t) {
      const std::uint64_t ts = mix_seed({config.seed, kExpPower, f_idx, static_cast<std::uint64_t>(t)});
      const Assignment assignment = sample_assignment(inst, mix_seed({ts, kTagAssign}));
      const auto kinds = assign_strategies(inst.m, fraction, config.mix, config.strategy, ts);
      const ReviewProfile profile = build_profile(inst, assignment, kinds, config.reviewer_noise, ts);

      for (std::size_t mode_idx = 0; mode_idx < modes.size(); ++mode_idx) {
        TestConfig tc;
        tc.alpha = config.alpha;
        tc.k = config.k;
        tc.supervision = modes[mode_idx];
        tc.seed = mix_seed({ts, kTagTest});
        rejects[t][mode_idx] = run_test(inst, assignment, profile, tc).reject ? 1 : 0;
      }
    });

    for (std::size_t mode_idx = 0; mode_idx < modes.size(); ++mode_idx) {
      long long hits = 0;
      for (const auto& r : rejects) hits += r[mode_idx];
      ReportRow row;
      row.grid = {{"mix", mix_label(config)},
                  {"strategy", strategy_label(config)},
                  {"truthful_fraction", format_number(fraction)},
                  {"supervision", modes[mode_idx] == SupervisionMode::GroundTruth ? "ground-truth" : "none"}};
      row.estimate = static_cast<double>(hits) / config.trials;
      row.stderr_ = rate_stderr(hits, config.trials);
      row.trials = config.trials;
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

ExperimentReport expected_gain_curve(const ExperimentConfig& config) {
  validate_common(config);
  require(config.strategy.has_value(), ErrorCode::InvalidConfig, "gain experiment needs a pure strategy");

  const int n = config.instance.n;
  const int lambda = config.instance.lambda;
  std::vector<int> positions = config.positions;
  if (positions.empty())
    for (int p = 1; p <= n; ++p) positions.push_back(p);
  for (int p : positions)
    require(p >= 1 && p <= n, ErrorCode::InvalidGrid, "swept position outside 1..n");

  ExperimentReport report;
  report.experiment = "gain";
  report.grid_columns = {"strategy", "position"};

  double mean_sum = 0.0;
  double mean_var = 0.0;

  for (std::size_t p_idx = 0; p_idx < positions.size(); ++p_idx) {
    const int position = positions[p_idx];

    // The strategic reviewer is reviewer 0 authoring work 0; the quality
    // vector places that work at the swept ground-truth position and the
    // remaining values in ascending work order.
    ProblemInstance inst = identity_instance(n, lambda);
    const double own_value = n + 1 - position;
    inst.qualities.clear();
    inst.qualities.push_back(own_value);
    for (int v = 1; v <= n; ++v)
      if (v != static_cast<int>(own_value)) inst.qualities.push_back(v);

    std::vector<int> diffs(config.trials, 0);
    parallel_for(config.trials, config.threads, [&](int t) {
      const std::uint64_t ts = mix_seed({config.seed, kExpGain, p_idx, static_cast<std::uint64_t>(t)});
      const Assignment assignment = sample_assignment(inst, mix_seed({ts, kTagAssign}));
      const AggregationRule rule = AggregationRule::borda(inst.mu);

      ReviewProfile truthful = ground_truth_profile(inst, assignment);
      ReviewProfile strategic = truthful;
      {
        const std::vector<int>& assigned = assignment.per_reviewer[0];
        std::vector<double> values(assigned.size());
        for (std::size_t u = 0; u < assigned.size(); ++u) values[u] = inst.qualities[assigned[u]];
        strategic.rankings[0].order = apply_strategy(*config.strategy, own_value, assigned, values, n);
      }

      const int pos_truthful = aggregate(truthful, rule, n).positions[0];
      const int pos_strategic = aggregate(strategic, rule, n).positions[0];
      diffs[t] = pos_truthful - pos_strategic;  // positive: manipulation landed higher
    });

    std::int64_t sum = 0, sumsq = 0;
    for (int d : diffs) {
      sum += d;
      sumsq += static_cast<std::int64_t>(d) * d;
    }
    const double mean = static_cast<double>(sum) / config.trials;
    double var = 0.0;
    if (config.trials > 1)
      var = (static_cast<double>(sumsq) - static_cast<double>(sum) * mean) / (config.trials - 1);
    const double se = std::sqrt(std::max(0.0, var) / config.trials);

    ReportRow row;
    row.grid = {{"strategy", to_string(*config.strategy)}, {"position", std::to_string(position)}};
    row.estimate = mean;
    row.stderr_ = se;
    row.trials = config.trials;
    report.rows.push_back(std::move(row));

    mean_sum += mean;
    mean_var += se * se;
  }

  ReportRow mean_row;
  mean_row.grid = {{"strategy", to_string(*config.strategy)}, {"position", "mean"}};
  mean_row.estimate = mean_sum / static_cast<double>(positions.size());
  mean_row.stderr_ = std::sqrt(mean_var) / static_cast<double>(positions.size());
  mean_row.trials = config.trials;
  report.rows.push_back(std::move(mean_row));
  return report;
}

ExperimentReport noisy_supervision_experiment(const ExperimentConfig& config) {
  validate_common(config);
  validate_fractions(config.truthful_fractions);
  require(!config.sigma_grid.empty(), ErrorCode::InvalidGrid, "supervision sigma grid is empty");
  require(!config.mix.has_value(), ErrorCode::InvalidConfig,
          "noisy_supervision sweeps a pure strategy, not a mix");

  const ProblemInstance& inst = config.instance;
  const StrategyKind strategy = config.strategy.value_or(StrategyKind::Distance);

  ExperimentReport report;
  report.experiment = "noisy_supervision";
  report.grid_columns = {"strategy", "supervision_sigma", "truthful_fraction"};

  for (std::size_t s_idx = 0; s_idx < config.sigma_grid.size(); ++s_idx) {
    const double sigma = config.sigma_grid[s_idx];
    require(sigma >= 0.0, ErrorCode::InvalidGrid, "negative supervision sigma");
    for (std::size_t f_idx = 0; f_idx < config.truthful_fractions.size(); ++f_idx) {
      const double fraction = config.truthful_fractions[f_idx];
      const std::uint64_t gp = s_idx * config.truthful_fractions.size() + f_idx;

      std::vector<std::uint8_t> rejects(config.trials, 0);
      parallel_for(config.trials, config.threads, [&](int t) {
        const std::uint64_t ts = mix_seed({config.seed, kExpNoisySup, gp, static_cast<std::uint64_t>(t)});
        const Assignment assignment = sample_assignment(inst, mix_seed({ts, kTagAssign}));
        const auto kinds = assign_strategies(inst.m, fraction, std::nullopt, strategy, ts);
        const ReviewProfile profile = build_profile(inst, assignment, kinds, config.reviewer_noise, ts);

        TestConfig tc;
        tc.alpha = config.alpha;
        tc.k = config.k;
        tc.supervision = SupervisionMode::ImpartialProfile;
        tc.impartial = build_impartial_profile(inst, assignment, sigma, ts);
        tc.seed = mix_seed({ts, kTagTest});
        rejects[t] = run_test(inst, assignment, profile, tc).reject ? 1 : 0;
      });

      long long hits = 0;
      for (auto r : rejects) hits += r;
      ReportRow row;
      row.grid = {{"strategy", to_string(strategy)},
                  {"supervision_sigma", format_number(sigma)},
                  {"truthful_fraction", format_number(fraction)}};
      row.estimate = static_cast<double>(hits) / config.trials;
      row.stderr_ = rate_stderr(hits, config.trials);
      row.trials = config.trials;
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

ExperimentReport false_alarm_experiment(const ExperimentConfig& config) {
  validate_common(config);
  require(!config.sigma_grid.empty(), ErrorCode::InvalidGrid, "sigma grid is empty");
  require(!config.schedules.empty(), ErrorCode::InvalidGrid, "no noise setup selected");
  require(config.with_supervision || config.without_supervision, ErrorCode::InvalidConfig,
          "at least one supervision mode must be enabled");

  const ProblemInstance& inst = config.instance;
  std::vector<SupervisionMode> modes;
  if (config.with_supervision) modes.push_back(SupervisionMode::ImpartialProfile);
  if (config.without_supervision) modes.push_back(SupervisionMode::None);

  ExperimentReport report;
  report.experiment = "false_alarm";
  report.grid_columns = {"setup", "sigma", "strategy", "supervision"};

  for (std::size_t sch_idx = 0; sch_idx < config.schedules.size(); ++sch_idx) {
    const NoiseSchedule schedule = config.schedules[sch_idx];
    const std::string setup_name =
        schedule == NoiseSchedule::TopHalfZero ? "top-half-zero" : "linear-in-rank";
    for (std::size_t s_idx = 0; s_idx < config.sigma_grid.size(); ++s_idx) {
      const double sigma = config.sigma_grid[s_idx];
      require(sigma >= 0.0 && !std::isinf(sigma), ErrorCode::InvalidGrid, "sigma must be finite and >= 0");
      const std::uint64_t gp = sch_idx * config.sigma_grid.size() + s_idx;
      const NoiseModel noise = NoiseModel::per_reviewer(schedule, sigma);
      const StrategyKind kind = config.strategy.value_or(StrategyKind::Truthful);

      std::vector<std::array<std::uint8_t, 2>> rejects(config.trials, {0, 0});
      parallel_for(config.trials, config.threads, [&](int t) {
        const std::uint64_t ts = mix_seed({config.seed, kExpFalseAlarm, gp, static_cast<std::uint64_t>(t)});
        const Assignment assignment = sample_assignment(inst, mix_seed({ts, kTagAssign}));
        const std::vector<StrategyKind> kinds(inst.m, kind);
        const ReviewProfile profile = build_profile(inst, assignment, kinds, noise, ts);

        for (std::size_t mode_idx = 0; mode_idx < modes.size(); ++mode_idx) {
          TestConfig tc;
          tc.alpha = config.alpha;
          tc.k = config.k;
          tc.supervision = modes[mode_idx];
          if (modes[mode_idx] == SupervisionMode::ImpartialProfile)
            tc.impartial = build_impartial_profile(inst, assignment, sigma / 2.0, ts);
          tc.seed = mix_seed({ts, kTagTest});
          rejects[t][mode_idx] = run_test(inst, assignment, profile, tc).reject ? 1 : 0;
        }
      });

      for (std::size_t mode_idx = 0; mode_idx < modes.size(); ++mode_idx) {
        long long hits = 0;
        for (const auto& r : rejects) hits += r[mode_idx];
        ReportRow row;
        row.grid = {{"setup", setup_name},
                    {"sigma", format_number(sigma)},
                    {"strategy", to_string(kind)},
                    {"supervision",
                     modes[mode_idx] == SupervisionMode::ImpartialProfile ? "noisy-impartial" : "none"}};
        row.estimate = static_cast<double>(hits) / config.trials;
        row.stderr_ = rate_stderr(hits, config.trials);
        row.trials = config.trials;
        report.rows.push_back(std::move(row));
      }
    }
  }
  return report;
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  if (config.experiment == "power") return power_experiment(config);
  if (config.experiment == "gain") return expected_gain_curve(config);
  if (config.experiment == "noisy_supervision") return noisy_supervision_experiment(config);
  if (config.experiment == "false_alarm") return false_alarm_experiment(config);
  throw Error(ErrorCode::InvalidConfig, "unknown experiment '" + config.experiment + "'");
}

SyntheticDataset generate_dataset(const ProblemInstance& inst, const std::optional<StrategyMix>& mix,
                                  const std::optional<StrategyKind>& strategy, double truthful_fraction,
                                  const NoiseModel& reviewer_noise, std::optional<double> impartial_sigma,
                                  std::uint64_t seed, const std::optional<Topology>& topology) {
  validate_instance(inst);
  require(truthful_fraction >= 0.0 && truthful_fraction <= 1.0, ErrorCode::InvalidGrid,
          "truthful fraction outside [0,1]");
  require(!(mix && strategy), ErrorCode::InvalidConfig, "provide a mix or a pure strategy, not both");

  SyntheticDataset out;
  out.assignment = topology ? sample_assignment_on_topology(inst, *topology, mix_seed({seed, kTagAssign}))
                            : sample_assignment(inst, mix_seed({seed, kTagAssign}));

  std::optional<StrategyKind> pure = strategy;
  if (!mix && !pure) pure = StrategyKind::Truthful;
  const auto kinds = assign_strategies(inst.m, truthful_fraction, mix, pure, seed);
  out.profile = build_profile(inst, out.assignment, kinds, reviewer_noise, seed);
  if (impartial_sigma) {
    require(*impartial_sigma >= 0.0, ErrorCode::InvalidGrid, "negative impartial sigma");
    out.impartial = build_impartial_profile(inst, out.assignment, *impartial_sigma, seed);
  }
  return out;
}

std::vector<BenchResult> runtime_bench(const std::vector<int>& n_grid, int k, std::uint64_t seed,
                                       int threads) {
  std::vector<BenchResult> out;
  for (std::size_t idx = 0; idx < n_grid.size(); ++idx) {
    const int n = n_grid[idx];
    if (n < 5) throw Error(ErrorCode::InvalidGrid, "bench needs n >= 5 for lambda = mu = 4");
    const ProblemInstance inst = identity_instance(n, 4);
    const std::uint64_t ts = mix_seed({seed, 0x62656e63ull, idx});
    const Assignment assignment = sample_assignment(inst, mix_seed({ts, kTagAssign}));
    const ReviewProfile profile = ground_truth_profile(inst, assignment);

    TestConfig tc;
    tc.k = k;
    tc.seed = mix_seed({ts, kTagTest});
    tc.threads = threads;

    const auto start = std::chrono::steady_clock::now();
    (void)run_test(inst, assignment, profile, tc);
    const auto stop = std::chrono::steady_clock::now();
    out.push_back({n, std::chrono::duration<double>(stop - start).count()});
  }
  return out;
}

}  // namespace peerrank
