#pragma once

#include <optional>
#include <string>
#include <vector>

#include "peerrank/sim.hpp"
#include "peerrank/types.hpp"

namespace peerrank {

/// External reviewer/work ids are strings; dense 0-based indices are used
/// internally. The instance file fixes the id order, and assignment/profile
/// files refer to those ids.
struct IdMaps {
  std::vector<std::string> reviewers;
  std::vector<std::string> works;

  int reviewer_index(const std::string& id) const;
  int work_index(const std::string& id) const;

  static IdMaps dense(int m, int n);  // "r0".."r{m-1}", "w0".."w{n-1}"
};

/// On-disk dataset: instance + assignment + profile (+ optional impartial
/// profile for supervised testing).
struct DatasetBundle {
  ProblemInstance instance;
  Assignment assignment;
  ReviewProfile profile;
  std::optional<ReviewProfile> impartial;
  IdMaps ids;
};

// Instance: JSON with n, m, lambda, mu, reviewer and work id arrays, a
// qualities array aligned with the work ids, and conflicts/authorship as
// sorted (reviewer, work) id pair lists.
void save_instance(const ProblemInstance& inst, const IdMaps& ids, const std::string& path);
std::pair<ProblemInstance, IdMaps> load_instance(const std::string& path);

// Assignment: one line per reviewer, "reviewer: work work ... work".
void save_assignment(const Assignment& assignment, const IdMaps& ids, const std::string& path);
Assignment load_assignment(const std::string& path, const IdMaps& ids);

// Profile: one line per reviewer, "reviewer: work > work > ... > work",
// best first.
void save_profile(const ReviewProfile& profile, const IdMaps& ids, const std::string& path);
ReviewProfile load_profile(const std::string& path, const IdMaps& ids);

// Topology: one "reviewer_node work_node" integer pair per line.
void save_topology(const Topology& topology, const std::string& path);
Topology load_topology(const std::string& path);

DatasetBundle load_bundle(const std::string& instance_path, const std::string& assignment_path,
                          const std::string& profile_path,
                          const std::optional<std::string>& impartial_path = std::nullopt);

/// RFC 4180: CRLF line endings, header row, quoting only when needed.
void write_report_csv(const ExperimentReport& report, const std::string& path);
std::string report_csv_string(const ExperimentReport& report);

/// Declarative experiment document (JSON) -> ExperimentConfig. Instance and
/// mix fields accept preset names or inline objects; sigma grids accept "inf".
ExperimentConfig parse_experiment_config(const std::string& json_text);

/// Canonical JSON echo of the effective config; embedded in report sidecars
/// and hashed for the config digest.
std::string experiment_config_json(const ExperimentConfig& config);

/// FNV-1a over a canonical string; used for config/instance digests in
/// output documents.
std::string digest_hex(const std::string& canonical);
std::string instance_digest(const ProblemInstance& inst);

}  // namespace peerrank
