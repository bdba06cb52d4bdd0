#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "peerrank/assign.hpp"
#include "peerrank/detect.hpp"
#include "peerrank/io.hpp"
#include "peerrank/presets.hpp"
#include "peerrank/sim.hpp"
#include "peerrank/strategy.hpp"
#include "peerrank/version.hpp"

namespace py = pybind11;
using namespace peerrank;

namespace {

SupervisionMode supervision_from_string(const std::string& mode) {
  if (mode == "none") return SupervisionMode::None;
  if (mode == "ground-truth") return SupervisionMode::GroundTruth;
  if (mode == "impartial") return SupervisionMode::ImpartialProfile;
  throw Error(ErrorCode::InvalidConfig, "supervision must be none, ground-truth, or impartial");
}

ReviewProfile profile_from_lists(const std::vector<std::vector<int>>& orders) {
  ReviewProfile profile;
  profile.rankings.resize(orders.size());
  for (std::size_t i = 0; i < orders.size(); ++i)
    profile.rankings[i] = Ranking{static_cast<int>(i), orders[i]};
  return profile;
}

std::vector<std::vector<int>> profile_to_lists(const ReviewProfile& profile) {
  std::vector<std::vector<int>> orders(profile.rankings.size());
  for (const Ranking& r : profile.rankings) orders[r.reviewer] = r.order;
  return orders;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Strategic-manipulation test for ranking-based peer assessment";
  m.attr("__version__") = kVersion;

  py::register_exception<Error>(m, "PeerRankError");

  py::class_<ProblemInstance>(m, "ProblemInstance")
      .def_readonly("n", &ProblemInstance::n)
      .def_readonly("m", &ProblemInstance::m)
      .def_readonly("lam", &ProblemInstance::lambda)
      .def_readonly("mu", &ProblemInstance::mu)
      .def_readwrite("qualities", &ProblemInstance::qualities)
      .def("conflict_pairs", [](const ProblemInstance& inst) { return inst.conflicts.entries(); })
      .def("authorship_pairs", [](const ProblemInstance& inst) { return inst.authorship.entries(); });

  py::class_<Assignment>(m, "Assignment")
      .def_property_readonly("per_reviewer",
                             [](const Assignment& a) { return a.per_reviewer; })
      .def_static("from_lists", [](int n_works, const std::vector<std::vector<int>>& lists) {
        return Assignment::from_lists(n_works, lists);
      });

  py::class_<TestResult>(m, "TestResult")
      .def_readonly("tau", &TestResult::tau)
      .def_readonly("phi", &TestResult::phi)
      .def_readonly("reject", &TestResult::reject)
      .def_readonly("threshold_index", &TestResult::threshold_index)
      .def_readonly("threshold_value", &TestResult::threshold_value)
      .def_readonly("effect_size", &TestResult::effect_size)
      .def_readonly("authored_count", &TestResult::authored_count)
      .def_readonly("quantile_diagnostic", &TestResult::quantile_diagnostic);

  m.def("identity_instance", &identity_instance, py::arg("n"), py::arg("lam"));
  m.def("instance_preset", &instance_preset, py::arg("name"));

  m.def(
      "sample_assignment",
      [](const ProblemInstance& inst, std::uint64_t seed) { return sample_assignment(inst, seed); },
      py::arg("instance"), py::arg("seed"));

  m.def(
      "ground_truth_profile",
      [](const ProblemInstance& inst, const Assignment& assignment) {
        return profile_to_lists(ground_truth_profile(inst, assignment));
      },
      py::arg("instance"), py::arg("assignment"));

  m.def(
      "aggregate_positions",
      [](const std::vector<std::vector<int>>& orders, int mu, int n_works) {
        return aggregate(profile_from_lists(orders), AggregationRule::borda(mu), n_works).positions;
      },
      py::arg("orders"), py::arg("mu"), py::arg("n_works"),
      "Borda-count final positions (competition ranking, ties shared)");

  m.def(
      "apply_strategy",
      [](const std::string& strategy, double own_value, const std::vector<int>& works,
         const std::vector<double>& values, int n) {
        return apply_strategy(strategy_from_string(strategy), own_value, works, values, n);
      },
      py::arg("strategy"), py::arg("own_value"), py::arg("works"), py::arg("values"), py::arg("n"));

  m.def(
      "run_test",
      [](const ProblemInstance& inst, const Assignment& assignment,
         const std::vector<std::vector<int>>& orders, double alpha, int k, const std::string& supervision,
         std::optional<std::vector<std::vector<int>>> impartial, std::uint64_t seed, int threads) {
        TestConfig config;
        config.alpha = alpha;
        config.k = k;
        config.supervision = supervision_from_string(supervision);
        if (impartial) config.impartial = profile_from_lists(*impartial);
        config.seed = seed;
        config.threads = threads;
        return run_test(inst, assignment, profile_from_lists(orders), config);
      },
      py::arg("instance"), py::arg("assignment"), py::arg("orders"), py::arg("alpha") = 0.05,
      py::arg("k") = 100, py::arg("supervision") = "none", py::arg("impartial") = std::nullopt,
      py::arg("seed") = 0, py::arg("threads") = 1);

  m.def(
      "generate_dataset",
      [](const ProblemInstance& inst, const std::string& strategy, double truthful_fraction,
         double noise_sigma, std::uint64_t seed) {
        const NoiseModel noise = noise_sigma > 0 ? NoiseModel::gaussian(noise_sigma) : NoiseModel::none();
        const SyntheticDataset data =
            generate_dataset(inst, std::nullopt, strategy_from_string(strategy), truthful_fraction, noise,
                             std::nullopt, seed);
        return py::make_tuple(data.assignment, profile_to_lists(data.profile));
      },
      py::arg("instance"), py::arg("strategy") = "truthful", py::arg("truthful_fraction") = 0.0,
      py::arg("noise_sigma") = 0.0, py::arg("seed") = 0);

  m.def(
      "simulate",
      [](const std::string& config_json, int threads) {
        ExperimentConfig config = parse_experiment_config(config_json);
        config.threads = threads;
        const ExperimentReport report = run_experiment(config);
        py::list rows;
        for (const ReportRow& row : report.rows) {
          py::dict d;
          for (const auto& [col, value] : row.grid) d[py::str(col)] = value;
          d["estimate"] = row.estimate;
          d["stderr"] = row.stderr_;
          d["trials"] = row.trials;
          rows.append(d);
        }
        return rows;
      },
      py::arg("config_json"), py::arg("threads") = 1,
      "Run a declarative experiment; returns a list of report rows");

  m.def("mix_preset_names", &mix_preset_names);
  m.def("instance_preset_names", &instance_preset_names);
}
