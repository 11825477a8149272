#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "efunc/errors.hpp"
#include "efunc/experiments.hpp"

namespace {

std::vector<efunc::Code> parse_arities(const std::string& text) {
  std::vector<efunc::Code> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    try {
      out.push_back(std::stoull(item));
    } catch (const std::exception&) {
      throw efunc::ConfigError("bad arity '" + item + "' in --language");
    }
  }
  return out;
}

struct Overrides {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<efunc::Stage> stage_budget;
  std::optional<efunc::Code> code_bound, window, samples, input_bound, max_universe, gadgets;
  std::string which, schedule, output, language, target_language, corrupt, json_out;
  std::vector<std::string> inputs, functors, structures;
  bool timing = false;
};

void add_common(CLI::App* app, Overrides& o) {
  app->add_option("--config", o.config, "JSON config file");
  app->add_option("--seed", o.seed, "random seed");
  app->add_option("--stage-budget", o.stage_budget, "stage budget");
  app->add_option("--code-bound", o.code_bound, "code bound");
  app->add_option("--window", o.window, "window size");
  app->add_option("--samples", o.samples, "number of samples");
  app->add_option("--schedule", o.schedule, "schedule file (element @stage per line)");
  app->add_option("--json", o.json_out, "write the report to this file");
  app->add_flag("--timing", o.timing, "add wall-clock time to the report");
}

efunc::ExperimentConfig build_config(const std::string& experiment, const Overrides& o) {
  efunc::ExperimentConfig c = o.config.empty() ? efunc::ExperimentConfig{}
                                                : efunc::load_config(o.config);
  if (!c.experiment.empty() && c.experiment != experiment)
    throw efunc::ConfigError("config is for '" + c.experiment + "', not '" + experiment + "'");
  c.experiment = experiment;
  if (o.seed) c.seed = *o.seed;
  if (o.stage_budget) c.stage_budget = *o.stage_budget;
  if (o.code_bound) c.code_bound = *o.code_bound;
  if (o.window) c.window = *o.window;
  if (o.samples) c.samples = *o.samples;
  if (o.input_bound) c.input_bound = *o.input_bound;
  if (o.max_universe) c.max_universe = *o.max_universe;
  if (o.gadgets) c.gadgets = *o.gadgets;
  if (!o.which.empty()) c.which = o.which;
  if (!o.schedule.empty()) c.schedule = o.schedule;
  if (!o.output.empty()) c.output = o.output;
  if (!o.language.empty()) c.language = parse_arities(o.language);
  if (!o.target_language.empty()) c.target_language = parse_arities(o.target_language);
  if (!o.corrupt.empty()) c.corrupt = o.corrupt;
  if (!o.inputs.empty()) c.inputs = o.inputs;
  if (!o.functors.empty()) c.functors = o.functors;
  if (!o.structures.empty()) c.structures = o.structures;
  efunc::validate(c);
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Operator and functor workbench"};
  app.require_subcommand(1);
  Overrides o;

  auto* transform = app.add_subcommand("transform", "transform an operator and sweep for equivalence");
  add_common(transform, o);
  transform->add_option("--which", o.which, "prop1-forward | prop1-backward | thm2 | enum-to-turing")
      ->required();
  transform->add_option("--input", o.inputs, "operator file or builtin:<name>");
  transform->add_option("--output", o.output, "write the transformed operator here");
  transform->add_option("--language", o.language, "source arities, e.g. 2,2");
  transform->add_option("--target-language", o.target_language, "target arities");
  transform->add_option("--input-bound", o.input_bound, "inputs compared are below this");
  transform->add_option("--max-universe", o.max_universe, "largest structure size swept");

  auto* spectrum = app.add_subcommand("spectrum", "pullback chain through drop_K / add_K");
  add_common(spectrum, o);
  spectrum->add_option("--corrupt", o.corrupt, "skip-class");

  auto* gallery = app.add_subcommand("gallery", "example structures and functors");
  add_common(gallery, o);
  gallery->add_option("--which", o.which, "prop3 | prop4 | thm4-parity | thm4-witness")->required();
  gallery->add_option("--gadgets", o.gadgets, "gadgets in the categoricity graphs");

  auto* check = app.add_subcommand("check", "functor laws or pseudo-inverse checks on files");
  add_common(check, o);
  check->add_option("--which", o.which, "laws | pseudo-inverse");
  check->add_option("--functor", o.functors, "functor bundle file");
  check->add_option("--structure", o.structures, "structure file");

  CLI11_PARSE(app, argc, argv);

  try {
    const std::string experiment = app.get_subcommands().front()->get_name();
    const efunc::ExperimentConfig config = build_config(experiment, o);
    const auto t0 = std::chrono::steady_clock::now();
    const efunc::Report report = efunc::run_experiment(config);
    nlohmann::json j = report.to_json();
    if (o.timing)
      j["seconds"] =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const std::string text = efunc::render(j);
    if (o.json_out.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(o.json_out);
      if (!out) throw efunc::ConfigError("cannot write '" + o.json_out + "'");
      out << text;
      for (const auto& c : report.checks)
        std::cout << (c.pass ? "pass  " : "FAIL  ") << c.name << '\n';
    }
    return report.pass() ? 0 : 1;
  } catch (const efunc::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
