#include "peerrank/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "peerrank/format.hpp"
#include "peerrank/presets.hpp"

namespace peerrank {

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write '" + path + "'");
  out << data;
}

int lookup(const std::unordered_map<std::string, int>& map, const std::string& id, const char* what) {
  auto it = map.find(id);
  if (it == map.end()) throw Error(ErrorCode::ParseError, std::string("unknown ") + what + " id '" + id + "'");
  return it->second;
}

std::unordered_map<std::string, int> index_of(const std::vector<std::string>& ids, const char* what) {
  std::unordered_map<std::string, int> map;
  for (std::size_t i = 0; i < ids.size(); ++i)
    if (!map.emplace(ids[i], static_cast<int>(i)).second)
      throw Error(ErrorCode::ParseError, std::string("duplicate ") + what + " id '" + ids[i] + "'");
  return map;
}

json pairs_json(const BinaryMatrix& matrix, const IdMaps& ids) {
  json out = json::array();
  for (auto [i, j] : matrix.entries()) out.push_back(json::array({ids.reviewers[i], ids.works[j]}));
  return out;
}

BinaryMatrix pairs_from_json(const json& pairs, int m, int n, const std::unordered_map<std::string, int>& rev,
                             const std::unordered_map<std::string, int>& work) {
  BinaryMatrix matrix(m, n);
  for (const auto& pair : pairs) {
    if (!pair.is_array() || pair.size() != 2)
      throw Error(ErrorCode::ParseError, "conflict/authorship entries must be [reviewer, work] pairs");
    matrix.set(lookup(rev, pair[0].get<std::string>(), "reviewer"),
               lookup(work, pair[1].get<std::string>(), "work"), true);
  }
  return matrix;
}

}  // namespace

int IdMaps::reviewer_index(const std::string& id) const {
  auto it = std::find(reviewers.begin(), reviewers.end(), id);
  if (it == reviewers.end()) throw Error(ErrorCode::ParseError, "unknown reviewer id '" + id + "'");
  return static_cast<int>(it - reviewers.begin());
}

int IdMaps::work_index(const std::string& id) const {
  auto it = std::find(works.begin(), works.end(), id);
  if (it == works.end()) throw Error(ErrorCode::ParseError, "unknown work id '" + id + "'");
  return static_cast<int>(it - works.begin());
}

IdMaps IdMaps::dense(int m, int n) {
  IdMaps ids;
  for (int i = 0; i < m; ++i) ids.reviewers.push_back("r" + std::to_string(i));
  for (int j = 0; j < n; ++j) ids.works.push_back("w" + std::to_string(j));
  return ids;
}

void save_instance(const ProblemInstance& inst, const IdMaps& ids, const std::string& path) {
  json doc;
  doc["n"] = inst.n;
  doc["m"] = inst.m;
  doc["lambda"] = inst.lambda;
  doc["mu"] = inst.mu;
  doc["reviewers"] = ids.reviewers;
  doc["works"] = ids.works;
  doc["qualities"] = inst.qualities;
  doc["conflicts"] = pairs_json(inst.conflicts, ids);
  doc["authorship"] = pairs_json(inst.authorship, ids);
  write_file(path, doc.dump(2) + "\n");
}

std::pair<ProblemInstance, IdMaps> load_instance(const std::string& path) {
  json doc;
  try {
    doc = json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, "instance file '" + path + "': " + e.what());
  }
  try {
    ProblemInstance inst;
    inst.n = doc.at("n").get<int>();
    inst.m = doc.at("m").get<int>();
    inst.lambda = doc.at("lambda").get<int>();
    inst.mu = doc.at("mu").get<int>();
    IdMaps ids;
    if (doc.contains("reviewers"))
      ids.reviewers = doc["reviewers"].get<std::vector<std::string>>();
    else
      ids.reviewers = IdMaps::dense(inst.m, inst.n).reviewers;
    if (doc.contains("works"))
      ids.works = doc["works"].get<std::vector<std::string>>();
    else
      ids.works = IdMaps::dense(inst.m, inst.n).works;
    if (static_cast<int>(ids.reviewers.size()) != inst.m || static_cast<int>(ids.works.size()) != inst.n)
      throw Error(ErrorCode::ShapeMismatch, "id arrays do not match n and m");
    inst.qualities = doc.at("qualities").get<std::vector<double>>();
    const auto rev = index_of(ids.reviewers, "reviewer");
    const auto work = index_of(ids.works, "work");
    inst.conflicts = pairs_from_json(doc.at("conflicts"), inst.m, inst.n, rev, work);
    inst.authorship = pairs_from_json(doc.at("authorship"), inst.m, inst.n, rev, work);
    return {std::move(inst), std::move(ids)};
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, "instance file '" + path + "': " + e.what());
  }
}

void save_assignment(const Assignment& assignment, const IdMaps& ids, const std::string& path) {
  std::ostringstream out;
  for (int i = 0; i < assignment.matrix.rows(); ++i) {
    out << ids.reviewers[i] << ":";
    for (int j : assignment.per_reviewer[i]) out << " " << ids.works[j];
    out << "\n";
  }
  write_file(path, out.str());
}

Assignment load_assignment(const std::string& path, const IdMaps& ids) {
  const auto rev = index_of(ids.reviewers, "reviewer");
  const auto work = index_of(ids.works, "work");
  std::vector<std::vector<int>> per_reviewer(ids.reviewers.size());
  std::vector<bool> seen(ids.reviewers.size(), false);

  std::istringstream in(read_file(path));
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos)
      throw Error(ErrorCode::ParseError, path + ":" + std::to_string(line_no) + ": expected 'reviewer: works'");
    const int i = lookup(rev, line.substr(0, colon), "reviewer");
    if (seen[i]) throw Error(ErrorCode::ParseError, path + ": duplicate line for reviewer");
    seen[i] = true;
    std::istringstream rest(line.substr(colon + 1));
    std::string token;
    while (rest >> token) per_reviewer[i].push_back(lookup(work, token, "work"));
  }
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (!seen[i])
      throw Error(ErrorCode::MissingReviewer, "assignment file lacks reviewer '" + ids.reviewers[i] + "'");
  return Assignment::from_lists(static_cast<int>(ids.works.size()), per_reviewer);
}

void save_profile(const ReviewProfile& profile, const IdMaps& ids, const std::string& path) {
  std::ostringstream out;
  for (const Ranking& r : profile.rankings) {
    out << ids.reviewers[r.reviewer] << ":";
    for (std::size_t p = 0; p < r.order.size(); ++p) out << (p == 0 ? " " : " > ") << ids.works[r.order[p]];
    out << "\n";
  }
  write_file(path, out.str());
}

ReviewProfile load_profile(const std::string& path, const IdMaps& ids) {
  const auto rev = index_of(ids.reviewers, "reviewer");
  const auto work = index_of(ids.works, "work");
  ReviewProfile profile;
  profile.rankings.resize(ids.reviewers.size());
  std::vector<bool> seen(ids.reviewers.size(), false);

  std::istringstream in(read_file(path));
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos)
      throw Error(ErrorCode::ParseError,
                  path + ":" + std::to_string(line_no) + ": expected 'reviewer: work > work > ...'");
    const int i = lookup(rev, line.substr(0, colon), "reviewer");
    if (seen[i]) throw Error(ErrorCode::ParseError, path + ": duplicate ranking for reviewer");
    seen[i] = true;
    Ranking r;
    r.reviewer = i;
    std::istringstream rest(line.substr(colon + 1));
    std::string token;
    while (rest >> token) {
      if (token == ">") continue;
      r.order.push_back(lookup(work, token, "work"));
    }
    profile.rankings[i] = std::move(r);
  }
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i])
      throw Error(ErrorCode::MissingReviewer, "profile file lacks reviewer '" + ids.reviewers[i] + "'");
    profile.rankings[i].reviewer = static_cast<int>(i);
  }
  return profile;
}

void save_topology(const Topology& topology, const std::string& path) {
  std::ostringstream out;
  for (auto [l, r] : topology.edges) out << l << " " << r << "\n";
  write_file(path, out.str());
}

Topology load_topology(const std::string& path) {
  Topology topology;
  std::istringstream in(read_file(path));
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    int l = -1, r = -1;
    if (!(row >> l >> r))
      throw Error(ErrorCode::ParseError,
                  path + ":" + std::to_string(line_no) + ": expected 'reviewer_node work_node'");
    topology.edges.emplace_back(l, r);
    topology.left_nodes = std::max(topology.left_nodes, l + 1);
    topology.right_nodes = std::max(topology.right_nodes, r + 1);
  }
  return topology;
}

DatasetBundle load_bundle(const std::string& instance_path, const std::string& assignment_path,
                          const std::string& profile_path, const std::optional<std::string>& impartial_path) {
  DatasetBundle bundle;
  auto [inst, ids] = load_instance(instance_path);
  bundle.instance = std::move(inst);
  bundle.ids = std::move(ids);
  validate_instance(bundle.instance);
  bundle.assignment = load_assignment(assignment_path, bundle.ids);
  validate_assignment(bundle.instance, bundle.assignment);
  bundle.profile = load_profile(profile_path, bundle.ids);
  validate_profile(bundle.assignment, bundle.profile);
  if (impartial_path) {
    bundle.impartial = load_profile(*impartial_path, bundle.ids);
    validate_profile(bundle.assignment, *bundle.impartial);
  }
  return bundle;
}

namespace {

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string report_csv_string(const ExperimentReport& report) {
  std::ostringstream out;
  for (const auto& col : report.grid_columns) out << csv_escape(col) << ",";
  out << "estimate,stderr,trials\r\n";
  for (const ReportRow& row : report.rows) {
    for (const auto& [col, value] : row.grid) out << csv_escape(value) << ",";
    out << format_number(row.estimate) << "," << format_number(row.stderr_) << "," << row.trials << "\r\n";
  }
  return out.str();
}

void write_report_csv(const ExperimentReport& report, const std::string& path) {
  write_file(path, report_csv_string(report));
}

namespace {

NoiseModel noise_from_json(const json& doc) {
  const std::string kind = doc.at("kind").get<std::string>();
  if (kind == "none") return NoiseModel::none();
  if (kind == "gaussian") return NoiseModel::gaussian(doc.at("sigma").get<double>());
  if (kind == "per-reviewer") {
    const std::string schedule = doc.at("schedule").get<std::string>();
    const double sigma = doc.at("sigma").get<double>();
    if (schedule == "top-half-zero") return NoiseModel::per_reviewer(NoiseSchedule::TopHalfZero, sigma);
    if (schedule == "linear-in-rank") return NoiseModel::per_reviewer(NoiseSchedule::LinearInRank, sigma);
    throw Error(ErrorCode::InvalidConfig, "unknown noise schedule '" + schedule + "'");
  }
  throw Error(ErrorCode::InvalidConfig, "unknown noise kind '" + kind + "'");
}

json noise_to_json(const NoiseModel& model) {
  json doc;
  switch (model.kind) {
    case NoiseModel::Kind::None: doc["kind"] = "none"; break;
    case NoiseModel::Kind::Gaussian:
      doc["kind"] = "gaussian";
      doc["sigma"] = model.sigma;
      break;
    case NoiseModel::Kind::PerReviewer:
      doc["kind"] = "per-reviewer";
      doc["schedule"] = model.schedule == NoiseSchedule::TopHalfZero ? "top-half-zero" : "linear-in-rank";
      doc["sigma"] = model.sigma;
      break;
  }
  return doc;
}

double sigma_from_json(const json& value) {
  if (value.is_string()) {
    if (value.get<std::string>() == "inf") return std::numeric_limits<double>::infinity();
    throw Error(ErrorCode::InvalidGrid, "sigma entries must be numbers or \"inf\"");
  }
  return value.get<double>();
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("experiment config: ") + e.what());
  }
  try {
    ExperimentConfig config;
    config.experiment = doc.at("experiment").get<std::string>();

    const json& inst = doc.at("instance");
    if (inst.is_string()) {
      config.instance_name = inst.get<std::string>();
      config.instance = instance_preset(config.instance_name);
    } else {
      const int n = inst.at("n").get<int>();
      const int lambda = inst.at("lambda").get<int>();
      config.instance = identity_instance(n, lambda);
      config.instance_name = "identity" + std::to_string(n) + "x" + std::to_string(lambda);
    }

    if (doc.contains("mix")) {
      const json& mix = doc["mix"];
      if (mix.is_string()) {
        config.mix_name = mix.get<std::string>();
        config.mix = mix_preset(config.mix_name);
      } else {
        StrategyMix custom;
        for (const auto& [name, weight] : mix.items())
          custom.weights.emplace_back(strategy_from_string(name), weight.get<double>());
        config.mix = custom.normalized();
        config.mix_name = "custom";
      }
    }
    if (doc.contains("strategy")) config.strategy = strategy_from_string(doc["strategy"].get<std::string>());

    if (doc.contains("truthful_fractions"))
      config.truthful_fractions = doc["truthful_fractions"].get<std::vector<double>>();
    if (doc.contains("reviewer_noise")) config.reviewer_noise = noise_from_json(doc["reviewer_noise"]);
    if (doc.contains("sigma_grid")) {
      config.sigma_grid.clear();
      for (const auto& v : doc["sigma_grid"]) config.sigma_grid.push_back(sigma_from_json(v));
    }
    if (doc.contains("schedules")) {
      config.schedules.clear();
      for (const auto& s : doc["schedules"]) {
        const std::string name = s.get<std::string>();
        if (name == "top-half-zero")
          config.schedules.push_back(NoiseSchedule::TopHalfZero);
        else if (name == "linear-in-rank")
          config.schedules.push_back(NoiseSchedule::LinearInRank);
        else
          throw Error(ErrorCode::InvalidConfig, "unknown schedule '" + name + "'");
      }
    }
    if (doc.contains("supervision")) {
      const std::string mode = doc["supervision"].get<std::string>();
      if (mode == "both") {
        config.with_supervision = config.without_supervision = true;
      } else if (mode == "ground-truth") {
        config.with_supervision = true;
        config.without_supervision = false;
      } else if (mode == "none") {
        config.with_supervision = false;
        config.without_supervision = true;
      } else {
        throw Error(ErrorCode::InvalidConfig, "unknown supervision mode '" + mode + "'");
      }
    }
    if (doc.contains("positions")) config.positions = doc["positions"].get<std::vector<int>>();
    if (doc.contains("alpha")) config.alpha = doc["alpha"].get<double>();
    if (doc.contains("k")) config.k = doc["k"].get<int>();
    if (doc.contains("trials")) config.trials = doc["trials"].get<int>();
    if (doc.contains("seed")) config.seed = doc["seed"].get<std::uint64_t>();
    return config;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidConfig, std::string("experiment config: ") + e.what());
  }
}

std::string experiment_config_json(const ExperimentConfig& config) {
  json doc;
  doc["experiment"] = config.experiment;
  doc["instance"] = {{"name", config.instance_name},
                     {"n", config.instance.n},
                     {"m", config.instance.m},
                     {"lambda", config.instance.lambda},
                     {"mu", config.instance.mu}};
  if (config.mix) {
    json mix;
    for (const auto& [kind, weight] : config.mix->weights) mix[to_string(kind)] = weight;
    doc["mix"] = {{"name", config.mix_name}, {"weights", mix}};
  }
  if (config.strategy) doc["strategy"] = to_string(*config.strategy);
  doc["truthful_fractions"] = config.truthful_fractions;
  doc["reviewer_noise"] = noise_to_json(config.reviewer_noise);
  json sigmas = json::array();
  for (double s : config.sigma_grid) {
    if (std::isinf(s))
      sigmas.push_back("inf");
    else
      sigmas.push_back(s);
  }
  doc["sigma_grid"] = sigmas;
  json schedules = json::array();
  for (NoiseSchedule s : config.schedules)
    schedules.push_back(s == NoiseSchedule::TopHalfZero ? "top-half-zero" : "linear-in-rank");
  doc["schedules"] = schedules;
  doc["with_supervision"] = config.with_supervision;
  doc["without_supervision"] = config.without_supervision;
  doc["positions"] = config.positions;
  doc["alpha"] = config.alpha;
  doc["k"] = config.k;
  doc["trials"] = config.trials;
  doc["seed"] = config.seed;
  doc["threads"] = config.threads;
  return doc.dump(2);
}

std::string digest_hex(const std::string& canonical) {
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (unsigned char c : canonical) {
    hash ^= c;
    hash *= 0x100000001b3ull;
  }
  char buf[17];
  static const char* hex = "0123456789abcdef";
  for (int i = 15; i >= 0; --i) {
    buf[i] = hex[hash & 0xf];
    hash >>= 4;
  }
  buf[16] = '\0';
  return std::string(buf);
}

std::string instance_digest(const ProblemInstance& inst) {
  std::ostringstream canonical;
  canonical << inst.n << "|" << inst.m << "|" << inst.lambda << "|" << inst.mu << "|q:";
  for (double q : inst.qualities) canonical << format_number(q) << ",";
  canonical << "|C:";
  for (auto [i, j] : inst.conflicts.entries()) canonical << i << ":" << j << ",";
  canonical << "|A:";
  for (auto [i, j] : inst.authorship.entries()) canonical << i << ":" << j << ",";
  return digest_hex(canonical.str());
}

}  // namespace peerrank
