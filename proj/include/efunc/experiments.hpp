#pragma once

// Experiment runner behind the command-line tool. A config names one
// experiment; running it yields a report of named pass/fail checks with
// witnesses for failures. Reports are deterministic functions of the config.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "efunc/diagrams.hpp"

namespace efunc {

struct ExperimentConfig {
  std::string experiment;  // transform | spectrum | gallery | check
  std::string which;       // sub-experiment, empty when it has none
  std::uint64_t seed = 1;
  Code code_bound = 1024;
  Stage stage_budget = 1000;
  Code window = 0;   // 0: the experiment's default
  Code samples = 0;  // 0: the experiment's default
  Code input_bound = 0;
  Code max_universe = 4;
  Code gadgets = 6;
  std::string schedule;  // path; empty for the built-in schedule
  std::vector<std::string> inputs;
  std::string output;
  std::vector<Code> language;  // empty: the input's default
  std::vector<Code> target_language;
  std::string corrupt;  // spectrum only: "" or "skip-class"
  std::vector<std::string> functors;
  std::vector<std::string> structures;
};

const std::vector<std::string>& experiment_names();
/// Valid `which` values for an experiment (empty when it takes none).
const std::vector<std::string>& which_names(const std::string& experiment);

/// Throws ConfigError on unknown keys, unknown names and non-positive bounds.
ExperimentConfig config_from_json(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);
void validate(const ExperimentConfig& config);
/// Fills the defaults that depend on the experiment.
ExperimentConfig resolved(const ExperimentConfig& config);
nlohmann::json to_json(const ExperimentConfig& config);

struct Check {
  std::string name;
  bool pass = false;
  nlohmann::json detail = nlohmann::json::object();
  nlohmann::json witness;  // null when passing
};

struct Report {
  std::string experiment;
  nlohmann::json config;
  std::vector<Check> checks;

  bool pass() const;
  nlohmann::json to_json() const;
};

/// The schedule used when a config names none: 3 @2, 6 @5, 1 @7.
CESchedule default_schedule();
CESchedule config_schedule(const ExperimentConfig& config);

Report run_transform(const ExperimentConfig& config);
Report run_spectrum_pipeline(const ExperimentConfig& config);
Report run_gallery(const ExperimentConfig& config);
Report run_check(const ExperimentConfig& config);
/// Dispatches on config.experiment.
Report run_experiment(const ExperimentConfig& config);

/// Two-space indented JSON with sorted keys and a trailing newline.
std::string render(const nlohmann::json& j);

}  // namespace efunc
