#include <doctest.h>

#include "efunc/errors.hpp"
#include "efunc/experiments.hpp"

using namespace efunc;
using nlohmann::json;

namespace {

ExperimentConfig config(const std::string& experiment, const std::string& which) {
  ExperimentConfig c;
  c.experiment = experiment;
  c.which = which;
  return c;
}

const Check* find_check(const Report& r, const std::string& prefix) {
  for (const Check& c : r.checks)
    if (c.name.starts_with(prefix)) return &c;
  return nullptr;
}

}  // namespace

TEST_CASE("config parsing") {
  const ExperimentConfig c = config_from_json(
      json{{"experiment", "gallery"}, {"which", "prop3"}, {"seed", 9}, {"window", 8}});
  CHECK(c.experiment == "gallery");
  CHECK(c.seed == 9);
  CHECK(c.window == 8);

  CHECK_THROWS_AS(config_from_json(json{{"experiment", "gallery"}, {"colour", 1}}), ConfigError);
  CHECK_THROWS_AS(config_from_json(json{{"experiment", "bake"}}), ConfigError);
  CHECK_THROWS_AS(config_from_json(json{{"experiment", "gallery"}, {"which", "prop9"}}), ConfigError);
  CHECK_THROWS_AS(config_from_json(json{{"experiment", "gallery"}, {"which", "prop3"}, {"seed", "x"}}),
                  ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);

  ExperimentConfig bad = config("spectrum", "");
  bad.corrupt = "flip-bits";
  CHECK_THROWS_AS(validate(bad), ConfigError);
}

TEST_CASE("config round trip through json") {
  ExperimentConfig c = config("transform", "thm2");
  c.seed = 4;
  c.language = {1, 2};
  const ExperimentConfig back = config_from_json(to_json(c));
  CHECK(to_json(back) == to_json(c));
}

TEST_CASE("defaults depend on the experiment") {
  CHECK(resolved(config("spectrum", "")).window == 24);
  CHECK(resolved(config("spectrum", "")).samples == 20);
  CHECK(resolved(config("gallery", "prop4")).window == 32);
  CHECK(resolved(config("gallery", "thm4-parity")).window == 12);
  CHECK(resolved(config("transform", "thm2")).input_bound == 128);
  ExperimentConfig explicit_window = config("gallery", "prop4");
  explicit_window.window = 5;
  CHECK(resolved(explicit_window).window == 5);
}

TEST_CASE("default schedule") {
  CHECK(default_schedule().entries().size() == 3);
  CHECK(config_schedule(config("gallery", "prop3")).entries() == default_schedule().entries());
}

TEST_CASE("reports are deterministic and carry counts") {
  ExperimentConfig t = config("transform", "prop1-forward");
  t.samples = 8;
  const Report a = run_experiment(t);
  const Report b = run_experiment(t);
  CHECK(render(a.to_json()) == render(b.to_json()));
  CHECK(a.pass());
  const Check* sweep = find_check(a, "star_to_enum");
  REQUIRE(sweep);
  CHECK(sweep->detail.at("oracles").get<std::size_t>() > 0);
  CHECK(sweep->witness.is_null());

  const json j = a.to_json();
  CHECK(j.at("experiment") == "transform prop1-forward");
  CHECK(j.at("pass") == true);
  CHECK(j.at("config").at("samples") == 8);
  CHECK(j.dump().find("time") == std::string::npos);
}

TEST_CASE("gallery experiments pass") {
  for (const std::string which : {"prop3", "thm4-parity", "thm4-witness"}) {
    ExperimentConfig c = config("gallery", which);
    c.samples = 5;
    c.window = which == "thm4-witness" ? 8 : 6;
    const Report r = run_experiment(c);
    CHECK_MESSAGE(r.pass(), which);
  }
}

TEST_CASE("corrupted spectrum fails with a witness") {
  ExperimentConfig c = config("spectrum", "");
  c.samples = 4;
  c.window = 8;
  CHECK(run_experiment(c).pass());
  c.corrupt = "skip-class";
  const Report r = run_experiment(c);
  CHECK_FALSE(r.pass());
  bool witnessed = false;
  for (const Check& check : r.checks)
    if (!check.pass) witnessed = witnessed || !check.witness.is_null();
  CHECK(witnessed);
}

TEST_CASE("render sorts keys") {
  CHECK(render(json{{"b", 1}, {"a", 2}}) == "{\n  \"a\": 2,\n  \"b\": 1\n}\n");
}
