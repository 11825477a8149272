#include "efunc/experiments.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "efunc/diagram_io.hpp"
#include "efunc/equivalence.hpp"
#include "efunc/errors.hpp"
#include "efunc/functor_io.hpp"
#include "efunc/gallery.hpp"
#include "efunc/random.hpp"
#include "efunc/spectrum.hpp"
#include "efunc/text_format.hpp"
#include "efunc/transforms.hpp"

namespace efunc {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Config

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names{"transform", "spectrum", "gallery", "check"};
  return names;
}

const std::vector<std::string>& which_names(const std::string& experiment) {
  static const std::map<std::string, std::vector<std::string>> names{
      {"transform", {"prop1-forward", "prop1-backward", "thm2", "enum-to-turing"}},
      {"spectrum", {}},
      {"gallery", {"prop3", "prop4", "thm4-parity", "thm4-witness"}},
      {"check", {"laws", "pseudo-inverse"}},
  };
  auto it = names.find(experiment);
  if (it == names.end()) throw ConfigError("unknown experiment '" + experiment + "'");
  return it->second;
}

namespace {

template <class T>
T get(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config key '") + key + "': " + e.what());
  }
}

bool contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

}  // namespace

ExperimentConfig config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  ExperimentConfig c;
  for (const auto& [key, value] : j.items()) {
    const char* k = key.c_str();
    if (key == "experiment") c.experiment = get<std::string>(j, k);
    else if (key == "which") c.which = get<std::string>(j, k);
    else if (key == "seed") c.seed = get<std::uint64_t>(j, k);
    else if (key == "code_bound") c.code_bound = get<Code>(j, k);
    else if (key == "stage_budget") c.stage_budget = get<Stage>(j, k);
    else if (key == "window") c.window = get<Code>(j, k);
    else if (key == "samples") c.samples = get<Code>(j, k);
    else if (key == "input_bound") c.input_bound = get<Code>(j, k);
    else if (key == "max_universe") c.max_universe = get<Code>(j, k);
    else if (key == "gadgets") c.gadgets = get<Code>(j, k);
    else if (key == "schedule") c.schedule = get<std::string>(j, k);
    else if (key == "inputs") c.inputs = get<std::vector<std::string>>(j, k);
    else if (key == "output") c.output = get<std::string>(j, k);
    else if (key == "language") c.language = get<std::vector<Code>>(j, k);
    else if (key == "target_language") c.target_language = get<std::vector<Code>>(j, k);
    else if (key == "corrupt") c.corrupt = get<std::string>(j, k);
    else if (key == "functors") c.functors = get<std::vector<std::string>>(j, k);
    else if (key == "structures") c.structures = get<std::vector<std::string>>(j, k);
    else throw ConfigError("unknown config key '" + key + "'");
  }
  if (!c.experiment.empty()) validate(c);
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config '" + path + "': " + e.what());
  }
  return config_from_json(j);
}

void validate(const ExperimentConfig& c) {
  if (!contains(experiment_names(), c.experiment))
    throw ConfigError("unknown experiment '" + c.experiment + "'");
  const auto& whiches = which_names(c.experiment);
  if (whiches.empty() && !c.which.empty())
    throw ConfigError("experiment '" + c.experiment + "' takes no 'which'");
  if (!whiches.empty() && !c.which.empty() && !contains(whiches, c.which))
    throw ConfigError("unknown '" + c.which + "' for experiment '" + c.experiment + "'");
  if (c.code_bound == 0) throw ConfigError("code_bound must be positive");
  if (c.stage_budget == 0) throw ConfigError("stage_budget must be positive");
  if (c.max_universe == 0) throw ConfigError("max_universe must be positive");
  if (c.gadgets == 0) throw ConfigError("gadgets must be positive");
  if (!c.corrupt.empty() && c.corrupt != "skip-class")
    throw ConfigError("unknown corruption '" + c.corrupt + "'");
  for (Code a : c.language)
    if (a == 0) throw ConfigError("relation arities must be positive");
  for (Code a : c.target_language)
    if (a == 0) throw ConfigError("relation arities must be positive");
}

ExperimentConfig resolved(const ExperimentConfig& config) {
  ExperimentConfig c = config;
  validate(c);
  const auto& whiches = which_names(c.experiment);
  if (c.which.empty() && !whiches.empty()) {
    if (c.experiment == "check")
      c.which = c.functors.size() >= 2 ? "pseudo-inverse" : "laws";
    else
      throw ConfigError("experiment '" + c.experiment + "' needs 'which'");
  }
  auto set = [](Code& field, Code value) {
    if (field == 0) field = value;
  };
  if (c.experiment == "transform") {
    set(c.window, 4);
    set(c.samples, 128);
    set(c.input_bound, c.which == "thm2" || c.which == "enum-to-turing" ? 128 : 64);
  } else if (c.experiment == "spectrum") {
    set(c.window, 24);
    set(c.samples, 20);
  } else if (c.experiment == "gallery") {
    if (c.which == "prop3") set(c.window, 16);
    if (c.which == "prop4") set(c.window, 32);
    if (c.which == "thm4-parity") set(c.window, 12);
    if (c.which == "thm4-witness") set(c.window, 8);
    set(c.samples, 50);
  } else {
    set(c.samples, 20);
  }
  set(c.input_bound, 64);
  return c;
}

json to_json(const ExperimentConfig& c) {
  json j;
  j["experiment"] = c.experiment;
  if (!c.which.empty()) j["which"] = c.which;
  j["seed"] = c.seed;
  j["code_bound"] = c.code_bound;
  j["stage_budget"] = c.stage_budget;
  j["window"] = c.window;
  j["samples"] = c.samples;
  j["input_bound"] = c.input_bound;
  j["max_universe"] = c.max_universe;
  j["gadgets"] = c.gadgets;
  j["schedule"] = c.schedule.empty() ? "builtin" : c.schedule;
  if (!c.inputs.empty()) j["inputs"] = c.inputs;
  if (!c.output.empty()) j["output"] = c.output;
  if (!c.language.empty()) j["language"] = c.language;
  if (!c.target_language.empty()) j["target_language"] = c.target_language;
  if (!c.corrupt.empty()) j["corrupt"] = c.corrupt;
  if (!c.functors.empty()) j["functors"] = c.functors;
  if (!c.structures.empty()) j["structures"] = c.structures;
  return j;
}

// ---------------------------------------------------------------------------
// Reports

bool Report::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

json Report::to_json() const {
  json j;
  j["experiment"] = experiment;
  j["config"] = config;
  j["pass"] = pass();
  json arr = json::array();
  for (const Check& c : checks) {
    json e;
    e["name"] = c.name;
    e["pass"] = c.pass;
    e["detail"] = c.detail;
    e["witness"] = c.witness;
    arr.push_back(std::move(e));
  }
  j["checks"] = std::move(arr);
  return j;
}

std::string render(const json& j) { return j.dump(2) + "\n"; }

CESchedule default_schedule() { return CESchedule({{3, 2}, {6, 5}, {1, 7}}); }

CESchedule config_schedule(const ExperimentConfig& c) {
  return c.schedule.empty() ? default_schedule() : load_schedule(c.schedule);
}

namespace {

Report start(const ExperimentConfig& c) {
  Report r;
  r.experiment = c.experiment + (c.which.empty() ? "" : " " + c.which);
  r.config = to_json(c);
  return r;
}

json sweep_detail(const SweepStats& s) {
  return json{{"structures", s.structures}, {"oracles", s.oracles},
              {"comparisons", s.comparisons}, {"skipped", s.skipped},
              {"mismatches", s.mismatch_count}};
}

json sweep_witness(const SweepStats& s) {
  if (s.ok()) return nullptr;
  json arr = json::array();
  for (const SweepMismatch& m : s.mismatches)
    arr.push_back(json{{"oracle", m.oracle}, {"input", m.input}, {"expected", m.expected},
                       {"actual", m.actual}});
  return arr;
}

Check sweep_check(std::string name, const SweepStats& s) {
  return Check{std::move(name), s.ok() && s.oracles > 0, sweep_detail(s), sweep_witness(s)};
}

json report_witness(const CheckReport& r) {
  if (r.ok()) return nullptr;
  json arr = json::array();
  for (std::size_t i = 0; i < r.violations.size() && i < 5; ++i) {
    const Violation& v = r.violations[i];
    json e{{"sample", v.sample}, {"check", v.check}, {"expected", v.expected},
           {"actual", v.actual}};
    e["element"] = v.element ? json(*v.element) : json(nullptr);
    arr.push_back(std::move(e));
  }
  return arr;
}

Check report_check(std::string name, const CheckReport& r) {
  return Check{std::move(name), r.ok(),
               json{{"samples", r.samples}, {"checks", r.checks},
                    {"violations", r.violations.size()}},
               report_witness(r)};
}

json set_difference_witness(const CodeSet& expected, const CodeSet& actual) {
  std::vector<Code> missing, extra;
  std::set_difference(expected.begin(), expected.end(), actual.begin(), actual.end(),
                      std::back_inserter(missing));
  std::set_difference(actual.begin(), actual.end(), expected.begin(), expected.end(),
                      std::back_inserter(extra));
  if (missing.size() > 10) missing.resize(10);
  if (extra.size() > 10) extra.resize(10);
  return json{{"missing", missing}, {"extra", extra}};
}

Check set_check(std::string name, const CodeSet& expected, const CodeSet& actual) {
  const bool ok = expected == actual;
  return Check{std::move(name), ok, json{{"codes", expected.size()}},
               ok ? json(nullptr) : set_difference_witness(expected, actual)};
}

RelationalLanguage language_of(const std::vector<Code>& arities,
                               const std::vector<Code>& fallback) {
  const auto& a = arities.empty() ? fallback : arities;
  return RelationalLanguage(std::vector<Code>(a.begin(), a.end()));
}

std::vector<StructurePresentation> structure_family(const RelationalLanguage& language,
                                                    Code min_universe, Code max_universe,
                                                    std::size_t samples, Rng& rng) {
  std::vector<StructurePresentation> out;
  for (Code n = std::max<Code>(1, min_universe); n <= max_universe; ++n)
    for (auto& s : total_structures(language, n, 10, samples, rng)) out.push_back(std::move(s));
  return out;
}

void write_output(const std::string& path, const std::vector<std::string>& header,
                  const EnumOperator* psi, const TuringFunctional* phi) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  if (psi) write_operator(out, *psi, header);
  if (phi) write_operator(out, *phi, header);
}

// ---------------------------------------------------------------------------
// Transform inputs

struct TransformInput {
  std::string name;
  std::optional<TuringFunctional> functional;
  std::optional<EnumOperator> op;
  std::vector<Code> default_language;
};

const std::vector<Code> kSuccessorArities{1, 2, 1};
const std::vector<Code> kDefaultArities{2, 2};

TransformInput transform_input(const std::string& name, Code window, Code code_bound) {
  TransformInput in{name, std::nullopt, std::nullopt, kDefaultArities};
  if (name == "builtin:flip-object" || name == "builtin:flip-object-enum") {
    const EffectivizedFunctor flip = functor_flip(window);
    const auto& phi = std::get<TuringFunctional>(flip.object());
    in.default_language = kSuccessorArities;
    if (name == "builtin:flip-object")
      in.functional = phi;
    else
      in.op = turing_to_enum_diagram(phi, flip.from(), code_bound);
  } else if (name == "builtin:identity-morphism") {
    in.functional = identity_morphism_functional(window, DiagramFormat::atomic);
  } else if (name == "builtin:identity-morphism-enum") {
    in.op = identity_morphism_operator(window);
  } else if (name.starts_with("builtin:")) {
    throw ConfigError("unknown builtin input '" + name + "'");
  } else {
    const OperatorFile file = load_operators(name);
    if (!file.enum_axioms.empty()) in.op = file.enum_operator();
    if (!file.query_axioms.empty() || file.shape) in.functional = file.functional();
  }
  return in;
}

std::string default_transform_input(const std::string& which) {
  if (which == "prop1-forward") return "builtin:identity-morphism";
  if (which == "prop1-backward") return "builtin:identity-morphism-enum";
  if (which == "thm2") return "builtin:flip-object";
  return "builtin:flip-object-enum";
}

std::vector<std::string> provenance(const ExperimentConfig& c, const std::string& input) {
  return {"transform " + c.which + " of " + input,
          "code_bound " + std::to_string(c.code_bound) + ", stage_budget " +
              std::to_string(c.stage_budget)};
}

Check listing_check(const EnumOperator& psi) {
  const auto problems = check_listing(psi);
  Check c{"listing is monotone with finite premises", problems.empty(),
          json{{"axioms", psi.axioms().size()}}, nullptr};
  if (!problems.empty()) c.witness = problems;
  return c;
}

Check consistent_premises_check(const EnumOperator& psi) {
  std::size_t bad = 0;
  json witness = nullptr;
  for (const EnumAxiom& ax : psi.axioms())
    for (Code z : ax.premise)
      if (ax.premise.contains(dual(z))) {
        if (bad++ == 0) witness = json{{"premise", ax.premise}, {"conclusion", ax.conclusion}};
        break;
      }
  return Check{"premises are consistent diagrams", bad == 0, json{{"inconsistent", bad}},
               witness};
}

}  // namespace

// ---------------------------------------------------------------------------
// Experiments

Report run_transform(const ExperimentConfig& config) {
  const ExperimentConfig c = resolved(config);
  Report r = start(c);
  Rng rng(c.seed);
  const std::string input_name = c.inputs.empty() ? default_transform_input(c.which) : c.inputs.front();
  const TransformInput in = transform_input(input_name, c.window, c.code_bound);
  const RelationalLanguage lang = language_of(c.language, in.default_language);
  const RelationalLanguage target = c.target_language.empty() ? lang
                                                              : language_of(c.target_language, {});
  SweepSettings settings;
  settings.input_bound = c.input_bound;
  settings.oracle_window = std::max<Code>(c.code_bound, 1024);

  auto need_functional = [&]() -> const TuringFunctional& {
    if (!in.functional) throw ConfigError("'" + input_name + "' holds no Turing axioms");
    return *in.functional;
  };
  auto need_operator = [&]() -> const EnumOperator& {
    if (!in.op) throw ConfigError("'" + input_name + "' holds no enumeration axioms");
    return *in.op;
  };

  if (c.which == "prop1-forward") {
    const TuringFunctional& phi = need_functional();
    const EnumOperator psi = star_to_enum(phi, lang, target, c.code_bound);
    const Code min_n = required_universe_join(phi, lang, target);
    const auto family = structure_family(lang, min_n, c.max_universe, c.samples, rng);
    r.checks.push_back(listing_check(psi));
    r.checks.push_back(sweep_check("star_to_enum agrees with the functional",
                                   compare_star(phi, psi, family, settings, min_n)));
    const EnumOperator wide =
        star_to_enum(phi, lang, target, c.code_bound, RangeReading::all_mentioned);
    r.checks.push_back(sweep_check("agreement with range read as all mentioned values",
                                   compare_star(phi, wide, family, settings, min_n)));
    if (!c.output.empty()) write_output(c.output, provenance(c, input_name), &psi, nullptr);
  } else if (c.which == "prop1-backward") {
    const EnumOperator& psi = need_operator();
    const TuringFunctional phi = enum_to_star(psi, c.stage_budget);
    phi.validate();
    const Code min_n = required_universe_join(psi, lang, target);
    const auto family = structure_family(lang, min_n, c.max_universe, c.samples, rng);
    r.checks.push_back(sweep_check("enum_to_star agrees with the operator",
                                   compare_star(phi, psi, family, settings, min_n)));
    if (!c.output.empty()) write_output(c.output, provenance(c, input_name), nullptr, &phi);
  } else if (c.which == "thm2") {
    const TuringFunctional& phi = need_functional();
    const EnumOperator psi = turing_to_enum_diagram(phi, lang, c.code_bound);
    const Code min_n = required_universe_diagram(phi, lang);
    const auto family = structure_family(lang, min_n, std::max(c.max_universe, min_n), c.samples, rng);
    r.checks.push_back(listing_check(psi));
    r.checks.push_back(consistent_premises_check(psi));
    r.checks.push_back(sweep_check("turing_to_enum_diagram agrees with the functional",
                                   compare_diagram(phi, psi, family, settings, min_n)));
    const TuringFunctional back = enum_to_turing_diagram(psi, lang, c.stage_budget);
    r.checks.push_back(sweep_check("round trip through enum_to_turing_diagram",
                                   compare_turing(phi, back, family, settings, min_n)));
    if (!c.output.empty()) write_output(c.output, provenance(c, input_name), &psi, nullptr);
  } else {
    const EnumOperator& psi = need_operator();
    const TuringFunctional phi = enum_to_turing_diagram(psi, lang, c.stage_budget);
    phi.validate();
    const Code min_n = required_universe_diagram(psi, lang);
    const auto family = structure_family(lang, min_n, std::max(c.max_universe, min_n), c.samples, rng);
    r.checks.push_back(sweep_check("enum_to_turing_diagram agrees with the operator",
                                   compare_diagram(phi, psi, family, settings, min_n)));
    if (!c.output.empty()) write_output(c.output, provenance(c, input_name), nullptr, &phi);
  }
  return r;
}

Report run_spectrum_pipeline(const ExperimentConfig& config) {
  const ExperimentConfig c = resolved(config);
  Report r = start(c);
  Rng rng(c.seed);
  const CESchedule schedule = config_schedule(c);
  const Code w = c.window;
  const StructurePresentation a = build_successor(SuccessorFlavor::with_k, schedule, w);
  const EffectivizedFunctor f = functor_drop_K(w);
  const EffectivizedFunctor g = functor_add_K(schedule, w);
  const IsoWitness lambda = identity_witness_enum(w);
  const auto corruption =
      c.corrupt == "skip-class" ? PipelineCorruption::skip_class : PipelineCorruption::none;

  auto run_one = [&](const std::string& name, const Enumeration& e) {
    const PipelineResult res = run_spectrum_chain(f, g, lambda, a, e, kAllStages, corruption);
    Check check{name, res.ok(), json::object(), nullptr};
    json links = json::array();
    for (const PipelineLink& link : res.links)
      links.push_back(json{{"link", link.name}, {"equal", link.equal},
                           {"codes", link.lhs_size}});
    check.detail["links"] = std::move(links);
    check.detail["enumeration_size"] = e.size();
    check.detail["injective"] = e.size() == w;
    if (auto i = res.first_failure()) {
      const PipelineLink& link = res.links[*i];
      check.witness = json{{"link", link.name}, {"enumeration", e.values}};
      check.witness["first_difference"] =
          link.first_difference ? json(*link.first_difference) : json(nullptr);
      if (!link.note.empty()) check.witness["note"] = link.note;
    }
    r.checks.push_back(std::move(check));
  };

  run_one("identity enumeration", Enumeration::identity(w));
  for (Code k = 0; k < c.samples; ++k) {
    Enumeration e;
    if (k % 2 == 0) {
      const IsoGraph p = random_permutation(rng, w);
      for (const auto& [x, y] : p) e.values.push_back(y);
    } else {
      e = random_enumeration(rng, w, w + 1 + rng.below(w));
    }
    run_one("enumeration " + std::to_string(k), e);
  }
  return r;
}

namespace {

std::vector<LawSample> law_samples(const StructurePresentation& a, Rng& rng, std::size_t count) {
  std::vector<LawSample> out;
  const Code n = a.universe();
  for (std::size_t i = 0; i < count; ++i) {
    const StructurePresentation start = transport(a, random_permutation(rng, n));
    const IsoGraph f = random_permutation(rng, n);
    const IsoGraph g = random_permutation(rng, n);
    out.push_back(make_law_sample(start, f, g));
  }
  return out;
}

std::vector<IsoSample> iso_samples(const StructurePresentation& a, Rng& rng, std::size_t count) {
  std::vector<IsoSample> out;
  const Code n = a.universe();
  for (std::size_t i = 0; i < count; ++i) {
    const StructurePresentation start = transport(a, random_permutation(rng, n));
    out.push_back(make_iso_sample(start, random_permutation(rng, n)));
  }
  return out;
}

void gallery_prop3(const ExperimentConfig& c, Report& r) {
  Rng rng(c.seed);
  const CESchedule schedule = config_schedule(c);
  const Code w = c.window;
  const EffectivizedFunctor flip = functor_flip(w);
  const StructurePresentation a = build_successor(SuccessorFlavor::with_k, schedule, w);
  const StructurePresentation b = build_successor(SuccessorFlavor::with_k_bar, schedule, w);
  const StructurePresentation fa = apply_object(flip, a, kAllStages);
  r.checks.push_back(set_check("flip(A) is A with K complemented", atomic_diagram(b, kAllStages),
                               atomic_diagram(fa, kAllStages)));
  r.checks.push_back(set_check("flip is an involution on objects", atomic_diagram(a, kAllStages),
                               atomic_diagram(apply_object(flip, fa, kAllStages), kAllStages)));

  std::size_t wrong = 0;
  json witness = nullptr;
  for (const IsoSample& s : iso_samples(a, rng, c.samples)) {
    const IsoGraph got = apply_morphism(flip, s.a, s.h, s.b, kAllStages);
    if (got != s.h && wrong++ == 0)
      witness = json{{"iso", describe(s.h)}, {"image", describe(got)}};
  }
  r.checks.push_back(Check{"flip acts as the identity on isomorphisms", wrong == 0,
                           json{{"samples", c.samples}, {"wrong", wrong}}, witness});
  r.checks.push_back(report_check("functor laws for flip",
                                  check_functor_laws(flip, law_samples(a, rng, c.samples),
                                                     kAllStages)));
}

void gallery_prop4(const ExperimentConfig& c, Report& r) {
  Rng rng(c.seed);
  const CESchedule schedule = config_schedule(c);
  const Code w = c.window;
  const EffectivizedFunctor drop = functor_drop_K(w);
  const EffectivizedFunctor add = functor_add_K(schedule, w);
  const StructurePresentation a = build_successor(SuccessorFlavor::with_k, schedule, w);
  const StructurePresentation b = build_successor(SuccessorFlavor::plain, schedule, w);

  const StructurePresentation da = apply_object(drop, a, kAllStages);
  r.checks.push_back(set_check("drop_K(A) is the plain successor structure",
                               positive_diagram(b, kAllStages), positive_diagram(da, kAllStages)));
  r.checks.push_back(set_check("add_K(drop_K(A)) = A on positive diagrams",
                               positive_diagram(a, kAllStages),
                               positive_diagram(apply_object(add, da, kAllStages), kAllStages)));

  r.checks.push_back(report_check("functor laws for drop_K",
                                  check_functor_laws(drop, law_samples(a, rng, c.samples),
                                                     kAllStages)));
  r.checks.push_back(report_check("functor laws for add_K",
                                  check_functor_laws(add, law_samples(b, rng, c.samples),
                                                     kAllStages)));
  const FunctorChain gf = FunctorChain::then(drop, add);
  r.checks.push_back(report_check("functor laws for add_K . drop_K",
                                  check_functor_laws(gf, law_samples(a, rng, c.samples),
                                                     kAllStages)));

  const IsoWitness id = identity_witness_enum(w);
  r.checks.push_back(report_check(
      "pseudo-inverse with identity witnesses",
      check_pseudo_inverse(drop, add, id, id, iso_samples(a, rng, c.samples),
                           iso_samples(b, rng, c.samples), kAllStages)));
}

void gallery_parity(const ExperimentConfig& c, Report& r) {
  const CESchedule schedule = config_schedule(c);
  const Code cycles = c.window + 1;
  const EffectivizedFunctor parity = functor_parity(schedule, c.gadgets);
  const CodeSet b1 =
      positive_diagram(build_categoricity_graph(GadgetCopy::B1, schedule, c.gadgets), kAllStages);
  const CodeSet b2 =
      positive_diagram(build_categoricity_graph(GadgetCopy::B2, schedule, c.gadgets), kAllStages);

  auto copy_check = [&](const std::string& name, std::optional<Code> cycle) {
    const StructurePresentation in = build_cycle_graph(schedule, cycles, kAllStages, cycle);
    const bool even = !cycle || (*cycle + 3) % 2 == 0;
    Check check = set_check(name, even ? b1 : b2,
                            positive_diagram(apply_object(parity, in, kAllStages), kAllStages));
    check.detail["expected_copy"] = to_string(even ? GadgetCopy::B1 : GadgetCopy::B2);
    if (cycle) check.detail["cycle_length"] = *cycle + 3;
    r.checks.push_back(std::move(check));
  };
  copy_check("0 is the loop vertex", std::nullopt);
  for (Code n = 0; n <= c.window; ++n)
    copy_check("0 on cycle " + std::to_string(n) + " (length " + std::to_string(n + 3) + ")", n);

  // Morphism part against the unique isomorphisms between the chosen copies.
  const IsoGraph expected = unique_isomorphism_B1_B2(schedule, c.gadgets);
  const Code n_out = categoricity_universe(schedule, c.gadgets);
  struct Case {
    std::string name;
    std::optional<Code> from, to;
    IsoGraph expected;
  };
  const std::vector<Case> cases{
      {"even to odd maps B1 onto B2", Code{1}, Code{0}, expected},
      {"odd to even maps B2 onto B1", Code{0}, Code{1}, inverse(expected)},
      {"loop to even maps B1 onto B1", std::nullopt, Code{1}, identity_graph(n_out)},
      {"odd to odd maps B2 onto B2", Code{0}, Code{2}, identity_graph(n_out)},
  };
  for (const Case& k : cases) {
    const IsoGraph into = cycle_relocation(cycles, k.to);
    const IsoGraph from = cycle_relocation(cycles, k.from);
    const IsoGraph h = compose(into, inverse(from));
    const StructurePresentation a = build_cycle_graph(schedule, cycles, kAllStages, k.from);
    const StructurePresentation b = build_cycle_graph(schedule, cycles, kAllStages, k.to);
    const IsoGraph got = apply_morphism(parity, a, h, b, kAllStages);
    const bool ok = got == k.expected;
    r.checks.push_back(Check{k.name, ok, json{{"elements", got.size()}},
                             ok ? json(nullptr)
                                : json{{"expected", describe(k.expected)}, {"actual", describe(got)}}});
  }
}

void gallery_witness(const ExperimentConfig& c, Report& r) {
  const CESchedule schedule = config_schedule(c);
  const MonotonicityWitness m = find_monotonicity_violation(schedule, c.window);
  const bool nested = std::includes(m.y_oracle.begin(), m.y_oracle.end(), m.x_oracle.begin(),
                                    m.x_oracle.end());
  Check check{"morphism part is not monotone", m.verified && nested, json::object(), nullptr};
  check.detail = json{{"gadget", m.gadget},
                      {"entry_stage", m.entry_stage},
                      {"element", m.element},
                      {"required_at_x", m.required_at_x},
                      {"required_at_y", m.required_at_y},
                      {"x_size", m.x_oracle.size()},
                      {"y_size", m.y_oracle.size()},
                      {"x_within_y", nested}};
  if (!check.pass) check.witness = json{{"x_oracle", m.x_oracle}, {"y_oracle", m.y_oracle}};
  r.checks.push_back(std::move(check));
}

IsoWitness identity_witness_for(const EffectivizedFunctor& f, Code window) {
  return f.format() == DiagramFormat::positive ? identity_witness_enum(window)
                                               : identity_witness_turing(window, f.format());
}

}  // namespace

Report run_gallery(const ExperimentConfig& config) {
  const ExperimentConfig c = resolved(config);
  Report r = start(c);
  if (c.which == "prop3") gallery_prop3(c, r);
  else if (c.which == "prop4") gallery_prop4(c, r);
  else if (c.which == "thm4-parity") gallery_parity(c, r);
  else gallery_witness(c, r);
  return r;
}

Report run_check(const ExperimentConfig& config) {
  const ExperimentConfig c = resolved(config);
  Report r = start(c);
  Rng rng(c.seed);
  if (c.functors.empty()) throw ConfigError("check needs at least one functor bundle");
  if (c.structures.empty()) throw ConfigError("check needs at least one structure file");
  std::vector<EffectivizedFunctor> fs;
  for (std::size_t i = 0; i < c.functors.size(); ++i)
    fs.push_back(load_bundle(c.functors[i]).functor(c.functors[i]));
  std::vector<StructurePresentation> ss;
  for (const auto& path : c.structures) ss.push_back(load_structure(path));

  if (c.which == "laws") {
    for (const auto& f : fs)
      for (std::size_t i = 0; i < ss.size(); ++i)
        r.checks.push_back(report_check("functor laws for " + f.name() + " on " + c.structures[i],
                                        check_functor_laws(f, law_samples(ss[i], rng, c.samples),
                                                           kAllStages)));
    return r;
  }
  if (fs.size() != 2) throw ConfigError("pseudo-inverse checks need exactly two functor bundles");
  const StructurePresentation& a = ss.front();
  const StructurePresentation b =
      ss.size() > 1 ? ss[1] : apply_object(fs[0], a, kAllStages);
  const Code w = std::max(a.universe(), b.universe());
  r.checks.push_back(report_check(
      "pseudo-inverse with identity witnesses",
      check_pseudo_inverse(fs[0], fs[1], identity_witness_for(fs[1], w),
                           identity_witness_for(fs[0], w), iso_samples(a, rng, c.samples),
                           iso_samples(b, rng, c.samples), kAllStages)));
  return r;
}

Report run_experiment(const ExperimentConfig& config) {
  validate(config);
  if (config.experiment == "transform") return run_transform(config);
  if (config.experiment == "spectrum") return run_spectrum_pipeline(config);
  if (config.experiment == "gallery") return run_gallery(config);
  return run_check(config);
}

}  // namespace efunc
