#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "peerrank/assign.hpp"
#include "peerrank/detect.hpp"
#include "peerrank/format.hpp"
#include "peerrank/io.hpp"
#include "peerrank/presets.hpp"
#include "peerrank/sim.hpp"
#include "peerrank/version.hpp"

namespace {

using nlohmann::json;
using namespace peerrank;

void write_text(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write '" + path + "'");
  out << data;
}

double phi_quantile(const std::vector<double>& sorted, double q) {
  const std::size_t idx = static_cast<std::size_t>(q * (sorted.size() - 1));
  return sorted[idx];
}

struct SupervisionFlag {
  SupervisionMode mode = SupervisionMode::None;
  std::optional<std::string> impartial_path;
};

SupervisionFlag parse_supervision(const std::string& value) {
  SupervisionFlag out;
  if (value == "none") {
    out.mode = SupervisionMode::None;
  } else if (value == "ground-truth") {
    out.mode = SupervisionMode::GroundTruth;
  } else if (value.rfind("file:", 0) == 0) {
    out.mode = SupervisionMode::ImpartialProfile;
    out.impartial_path = value.substr(5);
  } else {
    throw Error(ErrorCode::InvalidConfig,
                "--supervision must be none, ground-truth, or file:PATH (got '" + value + "')");
  }
  return out;
}

int cmd_test(const std::string& instance_path, const std::string& assignment_path,
             const std::string& profile_path, double alpha, int k, std::uint64_t seed,
             const std::string& supervision, int threads, const std::string& out_path) {
  const SupervisionFlag sup = parse_supervision(supervision);
  const DatasetBundle bundle =
      load_bundle(instance_path, assignment_path, profile_path, sup.impartial_path);

  TestConfig config;
  config.alpha = alpha;
  config.k = k;
  config.seed = seed;
  config.threads = threads;
  config.supervision = sup.mode;
  if (sup.mode == SupervisionMode::ImpartialProfile) config.impartial = bundle.impartial;

  const TestResult result = run_test(bundle.instance, bundle.assignment, bundle.profile, config);

  std::vector<double> sorted = result.phi;
  std::sort(sorted.begin(), sorted.end());
  json doc;
  doc["version"] = kVersion;
  doc["command"] = "test";
  doc["config"] = {{"alpha", alpha},     {"k", k},           {"seed", seed},
                   {"supervision", supervision}, {"threads", threads}};
  doc["instance_digest"] = instance_digest(bundle.instance);
  doc["tau"] = result.tau;
  doc["effect_size"] = result.effect_size;
  doc["authored_count"] = result.authored_count;
  doc["reject"] = result.reject;
  doc["threshold_index"] = result.threshold_index;
  doc["threshold_value"] = result.threshold_value;
  doc["quantile_diagnostic"] = result.quantile_diagnostic;
  doc["phi_summary"] = {{"count", sorted.size()},          {"min", sorted.front()},
                        {"q25", phi_quantile(sorted, .25)}, {"median", phi_quantile(sorted, .5)},
                        {"q75", phi_quantile(sorted, .75)}, {"max", sorted.back()}};

  const std::string text = doc.dump(2) + "\n";
  std::cout << text;
  if (!out_path.empty()) write_text(out_path, text);
  return 0;
}

int cmd_simulate(const std::string& config_path, std::optional<std::uint64_t> seed_override, int threads,
                 const std::string& out_prefix) {
  std::ifstream in(config_path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + config_path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();

  ExperimentConfig config = parse_experiment_config(buf.str());
  if (seed_override) config.seed = *seed_override;
  config.threads = threads;

  const auto start = std::chrono::steady_clock::now();
  const ExperimentReport report = run_experiment(config);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const std::string config_echo = experiment_config_json(config);
  json meta;
  meta["version"] = kVersion;
  meta["command"] = "simulate";
  meta["experiment"] = report.experiment;
  meta["config"] = json::parse(config_echo);
  meta["config_digest"] = digest_hex(config_echo);
  meta["seed"] = config.seed;
  meta["rows"] = report.rows.size();

  write_report_csv(report, out_prefix + ".csv");
  write_text(out_prefix + ".meta.json", meta.dump(2) + "\n");

  std::cout << report_csv_string(report);
  std::cerr << "wrote " << out_prefix << ".csv (" << report.rows.size() << " rows) in "
            << format_number(seconds) << "s\n";
  return 0;
}

int cmd_generate(const std::string& preset, const std::string& mix_name, const std::string& strategy_name,
                 double truthful_fraction, double noise_sigma, std::optional<double> impartial_sigma,
                 std::uint64_t seed, const std::string& out_dir, const std::string& topology_path) {
  const ProblemInstance inst = instance_preset(preset);
  std::optional<StrategyMix> mix;
  std::optional<StrategyKind> strategy;
  if (!mix_name.empty()) mix = mix_preset(mix_name);
  if (!strategy_name.empty()) strategy = strategy_from_string(strategy_name);

  std::optional<Topology> topology;
  if (!topology_path.empty()) topology = load_topology(topology_path);

  const NoiseModel noise = noise_sigma > 0 ? NoiseModel::gaussian(noise_sigma) : NoiseModel::none();
  const SyntheticDataset data =
      generate_dataset(inst, mix, strategy, truthful_fraction, noise, impartial_sigma, seed, topology);

  const IdMaps ids = IdMaps::dense(inst.m, inst.n);
  save_instance(inst, ids, out_dir + "/instance.json");
  save_assignment(data.assignment, ids, out_dir + "/assignment.txt");
  save_profile(data.profile, ids, out_dir + "/profile.txt");
  if (data.impartial) save_profile(*data.impartial, ids, out_dir + "/impartial.txt");

  json doc;
  doc["version"] = kVersion;
  doc["command"] = "generate";
  doc["preset"] = preset;
  doc["mix"] = mix_name;
  doc["strategy"] = strategy_name;
  doc["truthful_fraction"] = truthful_fraction;
  doc["noise_sigma"] = noise_sigma;
  if (impartial_sigma) doc["impartial_sigma"] = *impartial_sigma;
  doc["seed"] = seed;
  doc["instance_digest"] = instance_digest(inst);
  doc["files"] = json::array({"instance.json", "assignment.txt", "profile.txt"});
  if (data.impartial) doc["files"].push_back("impartial.txt");
  write_text(out_dir + "/manifest.json", doc.dump(2) + "\n");
  std::cout << doc.dump(2) << "\n";
  return 0;
}

int cmd_bench(const std::vector<int>& n_grid, int k, std::uint64_t seed, int threads,
              const std::string& out_path) {
  const auto results = runtime_bench(n_grid, k, seed, threads);
  std::ostringstream csv;
  csv << "n,seconds\r\n";
  for (const auto& row : results) {
    csv << row.n << "," << format_number(row.seconds) << "\r\n";
    std::cout << "n = " << row.n << ": " << format_number(row.seconds) << "s\n";
  }
  if (!out_path.empty()) write_text(out_path, csv.str());
  return 0;
}

int cmd_presets() {
  std::cout << "instance presets:\n";
  for (const auto& name : instance_preset_names()) {
    const ProblemInstance inst = instance_preset(name);
    std::cout << "  " << name << ": n = m = " << inst.n << ", lambda = mu = " << inst.lambda << "\n";
  }
  std::cout << "mix presets:\n";
  for (const auto& name : mix_preset_names()) {
    const StrategyMix mix = mix_preset(name);
    std::cout << "  " << name << ":";
    for (const auto& [kind, weight] : mix.weights)
      std::cout << " " << to_string(kind) << "=" << format_number(weight);
    std::cout << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Detection of strategic manipulation in ranking-based peer assessment"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  // test
  auto* test = app.add_subcommand("test", "Run the manipulation test on a dataset bundle");
  std::string instance_path, assignment_path, profile_path, supervision = "none", out_path;
  double alpha = 0.05;
  int k = 100;
  std::uint64_t seed = 0;
  int threads = 1;
  test->add_option("--instance", instance_path, "Instance JSON file")->required();
  test->add_option("--assignment", assignment_path, "Assignment file")->required();
  test->add_option("--profile", profile_path, "Ranking profile file")->required();
  test->add_option("--alpha", alpha, "Significance level (default 0.05)");
  test->add_option("--k", k, "Null sample count; 0 = full enumeration (default 100)");
  test->add_option("--seed", seed, "RNG seed")->required();
  test->add_option("--supervision", supervision, "none | ground-truth | file:PATH (default none)");
  test->add_option("--threads", threads, "Worker threads (default 1)");
  test->add_option("--out", out_path, "Write the result document to this path");

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Run a Monte Carlo experiment from a config document");
  std::string config_path, sim_out;
  std::uint64_t sim_seed = 0;
  bool sim_seed_set = false;
  int sim_threads = 1;
  simulate->add_option("--config", config_path, "Experiment config JSON")->required();
  simulate->add_option("--out", sim_out, "Output prefix (PREFIX.csv, PREFIX.meta.json)")->required();
  simulate->add_option("--seed", sim_seed, "Override the config seed")->each([&](const std::string&) {
    sim_seed_set = true;
  });
  simulate->add_option("--threads", sim_threads, "Worker threads (default 1)");

  // generate
  auto* generate = app.add_subcommand("generate", "Synthesize a dataset bundle");
  std::string gen_preset = "game20", gen_mix, gen_strategy, gen_out, gen_topology;
  double gen_fraction = 0.0, gen_sigma = 0.0;
  double gen_impartial_sigma = -1.0;
  std::uint64_t gen_seed = 0;
  generate->add_option("--preset", gen_preset, "Instance preset (default game20)");
  generate->add_option("--mix", gen_mix, "Strategy mix preset for strategic reviewers");
  generate->add_option("--strategy", gen_strategy, "Pure strategy for strategic reviewers");
  generate->add_option("--truthful-fraction", gen_fraction, "Fraction of truthful reviewers (default 0)");
  generate->add_option("--noise-sigma", gen_sigma, "Gaussian perception noise for reviewers (default 0)");
  generate->add_option("--impartial-sigma", gen_impartial_sigma,
                       "Also write impartial.txt sampled at this noise level (0 = ground truth)");
  generate->add_option("--seed", gen_seed, "RNG seed")->required();
  generate->add_option("--out", gen_out, "Output directory")->required();
  generate->add_option("--topology", gen_topology, "Fixed-topology edge list to assign on");

  // bench
  auto* bench = app.add_subcommand("bench", "Wall time of one test per instance size");
  std::vector<int> bench_n = {20, 50, 100, 200};
  int bench_k = 100, bench_threads = 1;
  std::uint64_t bench_seed = 0;
  std::string bench_out;
  bench->add_option("--n", bench_n, "Instance sizes (n = m)");
  bench->add_option("--k", bench_k, "Null sample count (default 100)");
  bench->add_option("--seed", bench_seed, "RNG seed")->required();
  bench->add_option("--threads", bench_threads, "Worker threads (default 1)");
  bench->add_option("--out", bench_out, "Write n,seconds CSV to this path");

  // presets
  app.add_subcommand("presets", "List instance and mix presets");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("test"))
      return cmd_test(instance_path, assignment_path, profile_path, alpha, k, seed, supervision, threads,
                      out_path);
    if (app.got_subcommand("simulate"))
      return cmd_simulate(config_path, sim_seed_set ? std::optional<std::uint64_t>(sim_seed) : std::nullopt,
                          sim_threads, sim_out);
    if (app.got_subcommand("generate"))
      return cmd_generate(gen_preset, gen_mix, gen_strategy, gen_fraction, gen_sigma,
                          gen_impartial_sigma >= 0 ? std::optional<double>(gen_impartial_sigma)
                                                   : std::nullopt,
                          gen_seed, gen_out, gen_topology);
    if (app.got_subcommand("bench")) return cmd_bench(bench_n, bench_k, bench_seed, bench_threads, bench_out);
    if (app.got_subcommand("presets")) return cmd_presets();
  } catch (const Error& e) {
    std::cerr << "error[" << to_string(e.code()) << "]: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
