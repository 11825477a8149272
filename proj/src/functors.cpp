#include "efunc/functors.hpp"

#include <algorithm>
#include <iterator>
#include <sstream>

#include "efunc/errors.hpp"

namespace efunc {

std::string to_string(FunctorKind kind) {
  switch (kind) {
    case FunctorKind::computable: return "computable";
    case FunctorKind::enumerable: return "enumerable";
    case FunctorKind::star_enumerable: return "star-enumerable";
    case FunctorKind::positive_enumerable: return "positive-enumerable";
    case FunctorKind::positive_star_enumerable: return "positive-star-enumerable";
  }
  return "computable";
}

std::optional<FunctorKind> kind_from_string(const std::string& name) {
  for (FunctorKind k : {FunctorKind::computable, FunctorKind::enumerable,
                        FunctorKind::star_enumerable, FunctorKind::positive_enumerable,
                        FunctorKind::positive_star_enumerable})
    if (to_string(k) == name) return k;
  return std::nullopt;
}

DiagramFormat format_of(FunctorKind kind) {
  return (kind == FunctorKind::positive_enumerable || kind == FunctorKind::positive_star_enumerable)
             ? DiagramFormat::positive
             : DiagramFormat::atomic;
}

bool is_enumeration_species(const OperatorPart& part) noexcept {
  return std::holds_alternative<EnumOperator>(part) || std::holds_alternative<StreamOperator>(part);
}

std::string species_name(const OperatorPart& part) {
  switch (part.index()) {
    case 0: return "enumeration operator";
    case 1: return "Turing functional";
    case 2: return "stream operator";
    default: return "oracle program";
  }
}

EffectivizedFunctor::EffectivizedFunctor(std::string name, FunctorKind kind,
                                         RelationalLanguage from, RelationalLanguage to,
                                         OperatorPart object, OperatorPart morphism,
                                         UniverseMap out_universe)
    : name_(std::move(name)),
      kind_(kind),
      from_(std::move(from)),
      to_(std::move(to)),
      object_(std::move(object)),
      morphism_(std::move(morphism)),
      out_universe_(std::move(out_universe)) {
  const bool object_enum = kind_ != FunctorKind::computable;
  const bool morphism_enum =
      kind_ == FunctorKind::enumerable || kind_ == FunctorKind::positive_enumerable;
  if (is_enumeration_species(object_) != object_enum)
    throw KindError(to_string(kind_) + " functor '" + name_ + "' cannot have a " +
                    species_name(object_) + " as object part");
  if (is_enumeration_species(morphism_) != morphism_enum)
    throw KindError(to_string(kind_) + " functor '" + name_ + "' cannot have a " +
                    species_name(morphism_) + " as morphism part");
  from_.validate();
  to_.validate();
}

EffectivizedFunctor EffectivizedFunctor::with_morphism(OperatorPart morphism) const {
  return EffectivizedFunctor(name_, kind_, from_, to_, object_, std::move(morphism), out_universe_);
}

// ---------------------------------------------------------------------------

namespace {

Code max_atom_code(const RelationalLanguage& language, Code n) {
  Code top = 0;
  for (std::size_t i = 0; i < language.size(); ++i) {
    Atom a{i, std::vector<Code>(language.arity(i), n - 1)};
    top = std::max(top, atom_code(language, a));
  }
  return top;
}

CodeSet run_enum(const OperatorPart& part, const CodeSet& oracle, Stage stage) {
  if (const auto* op = std::get_if<EnumOperator>(&part)) return apply_enum_operator(*op, oracle, stage);
  return std::get<StreamOperator>(part).apply(oracle, stage);
}

std::optional<Code> run_turing(const OperatorPart& part, const TotalOracle& oracle, Code x,
                               Stage stage) {
  if (const auto* phi = std::get_if<TuringFunctional>(&part))
    return apply_turing_functional(*phi, oracle, x, stage);
  OracleView view(oracle);
  return std::get<OracleProgram>(part).run(view, x, stage);
}

void check_language(const EffectivizedFunctor& f, const StructurePresentation& s) {
  if (s.language() != f.from())
    throw CompositionError("functor '" + f.name() + "' applied to a structure in another language");
}

// Decodes an enumerated diagram on [0, n) in the given format.
StructurePresentation decode_output(const CodeSet& out, const RelationalLanguage& language, Code n,
                                    DiagramFormat format, const std::string& who) {
  StructurePresentation s(language, n, false);
  auto fail = [&who](Code c, const std::string& why) {
    throw IllFormedFunctor("functor '" + who + "' emitted " + std::to_string(c) + ": " + why);
  };
  for (Code c : out) {
    Literal lit;
    try {
      lit = decode_atom(c, language, format);
    } catch (const DecodeError& e) {
      fail(c, e.what());
    }
    for (Code x : lit.args)
      if (x >= n) fail(c, "element outside the output window " + std::to_string(n));
    switch (lit.kind) {
      case Literal::Kind::equal:
        if (lit.args[0] != lit.args[1]) fail(c, "equality between distinct elements");
        break;
      case Literal::Kind::not_equal:
        if (lit.args[0] == lit.args[1]) fail(c, "inequality of an element with itself");
        break;
      case Literal::Kind::relation:
        if (format == DiagramFormat::atomic && out.contains(dual(c)))
          fail(c, "atom enumerated together with its negation");
        s.add_fact(lit.atom());
        break;
      case Literal::Kind::negated_relation: s.add_negative_fact(lit.atom()); break;
    }
  }
  if (format == DiagramFormat::atomic &&
      s.facts().size() + s.negative_facts().size() == all_atoms(language, n).size())
    s.set_total(true);
  return s;
}

void add_pair(IsoGraph& g, Code x, Code y, const std::string& who) {
  auto [it, inserted] = g.emplace(x, y);
  if (!inserted && it->second != y)
    throw IllFormedFunctor("functor '" + who + "' maps " + std::to_string(x) + " to both " +
                           std::to_string(it->second) + " and " + std::to_string(y));
}

}  // namespace

Code diagram_window(const RelationalLanguage& language, Code n, DiagramFormat format) {
  if (n == 0) return 0;
  const Code atoms = max_atom_code(language, n);
  if (format == DiagramFormat::atomic) return language.size() == 0 ? 0 : 2 * atoms + 2;
  const Code eq = 3 * cantor_pair(n - 1, n - 1) + 2;
  return std::max(eq, language.size() == 0 ? 0 : 3 * atoms + 2) + 1;
}

Code join_window(const RelationalLanguage& a, const RelationalLanguage& b, Code n,
                 DiagramFormat format) {
  if (n == 0) return 0;
  const Code inner =
      std::max({diagram_window(a, n, format), cantor_pair(n - 1, n - 1) + 1, diagram_window(b, n, format)});
  return 3 * inner;
}

StructurePresentation apply_object(const EffectivizedFunctor& f, const StructurePresentation& s,
                                   Stage stage) {
  check_language(f, s);
  const Code n = f.out_universe(s.universe());
  const CodeSet oracle = diagram(s, stage, f.format());
  if (is_enumeration_species(f.object()))
    return decode_output(run_enum(f.object(), oracle, stage), f.to(), n, f.format(), f.name());

  const TotalOracle total(oracle, diagram_window(s.language(), s.universe(), f.format()));
  StructurePresentation out(f.to(), n, false);
  bool determined = true;
  for (const Atom& atom : all_atoms(f.to(), n)) {
    const Code x = atomic_code(f.to(), atom, false);
    auto v = run_turing(f.object(), total, x, stage);
    auto w = run_turing(f.object(), total, dual(x), stage);
    if ((v && *v > 1) || (w && *w > 1))
      throw IllFormedFunctor("functor '" + f.name() + "' answers outside {0,1} on " +
                             to_string(atom));
    if (v && w && *v == *w)
      throw IllFormedFunctor("functor '" + f.name() + "' gives " + to_string(atom) +
                             " and its negation the same answer");
    const std::optional<bool> holds = v ? std::optional<bool>(*v == 1)
                                        : (w ? std::optional<bool>(*w == 0) : std::nullopt);
    if (!holds) {
      determined = false;
    } else if (*holds) {
      out.add_fact(atom);
    } else {
      out.add_negative_fact(atom);
    }
  }
  out.set_total(determined);
  return out;
}

IsoGraph apply_morphism(const EffectivizedFunctor& f, const StructurePresentation& a,
                        const IsoGraph& iso, const StructurePresentation& b, Stage stage) {
  check_language(f, a);
  check_language(f, b);
  const Code n = f.out_universe(a.universe());
  const Code m = f.out_universe(b.universe());
  const CodeSet oracle =
      join3(diagram(a, stage, f.format()), graph_codes(iso), diagram(b, stage, f.format()));
  IsoGraph out;
  if (is_enumeration_species(f.morphism())) {
    for (Code c : run_enum(f.morphism(), oracle, stage)) {
      auto [x, y] = cantor_unpair(c);
      if (x >= n || y >= m)
        throw IllFormedFunctor("functor '" + f.name() + "' maps " + std::to_string(x) + " to " +
                               std::to_string(y) + " outside the output windows");
      add_pair(out, x, y, f.name());
    }
  } else {
    const Code window = std::max(join_window(f.from(), f.from(), std::max(a.universe(), b.universe()),
                                             f.format()),
                                 oracle.empty() ? Code{0} : *oracle.rbegin() + 1);
    const TotalOracle total(oracle, window);
    for (Code x = 0; x < n; ++x)
      if (auto y = run_turing(f.morphism(), total, x, stage)) {
        if (*y >= m)
          throw IllFormedFunctor("functor '" + f.name() + "' maps " + std::to_string(x) + " to " +
                                 std::to_string(*y) + " outside the output window");
        add_pair(out, x, *y, f.name());
      }
  }
  if (!is_partial_injection(out))
    throw IllFormedFunctor("functor '" + f.name() + "' produced a non-injective map " + describe(out));
  return out;
}

// ---------------------------------------------------------------------------

FunctorChain FunctorChain::then(const FunctorChain& inner, const FunctorChain& outer) {
  FunctorChain c;
  c.parts_ = inner.parts_;
  c.parts_.insert(c.parts_.end(), outer.parts_.begin(), outer.parts_.end());
  return c;
}

std::string FunctorChain::name() const {
  if (parts_.empty()) return "id";
  std::string out;
  for (auto it = parts_.rbegin(); it != parts_.rend(); ++it)
    out += (out.empty() ? "" : ".") + (*it)->name();
  return out;
}

StructurePresentation FunctorChain::apply_object(const StructurePresentation& s, Stage stage) const {
  StructurePresentation cur = s;
  for (const auto* f : parts_) cur = efunc::apply_object(*f, cur, stage);
  return cur;
}

IsoGraph FunctorChain::apply_morphism(const StructurePresentation& a, const IsoGraph& iso,
                                      const StructurePresentation& b, Stage stage) const {
  StructurePresentation ca = a;
  StructurePresentation cb = b;
  IsoGraph cur = iso;
  for (const auto* f : parts_) {
    cur = efunc::apply_morphism(*f, ca, cur, cb, stage);
    ca = efunc::apply_object(*f, ca, stage);
    cb = efunc::apply_object(*f, cb, stage);
  }
  return cur;
}

IsoGraph run_witness(const IsoWitness& w, const StructurePresentation& a, Code domain,
                     Code codomain, Stage stage) {
  const CodeSet oracle = diagram(a, stage, w.format);
  IsoGraph out;
  auto add = [&](Code x, Code y) {
    auto [it, inserted] = out.emplace(x, y);
    if (!inserted && it->second != y)
      throw WitnessMalformed("witness '" + w.name + "' maps " + std::to_string(x) + " twice");
  };
  if (is_enumeration_species(w.op)) {
    for (Code c : run_enum(w.op, oracle, stage)) {
      auto [x, y] = cantor_unpair(c);
      if (x < domain) add(x, y);
    }
  } else {
    const TotalOracle total(oracle, std::max(diagram_window(a.language(), a.universe(), w.format),
                                             oracle.empty() ? Code{0} : *oracle.rbegin() + 1));
    for (Code x = 0; x < domain; ++x)
      if (auto y = run_turing(w.op, total, x, stage)) add(x, *y);
  }
  if (domain != codomain || !is_bijection_on(out, domain))
    throw WitnessMalformed("witness '" + w.name + "' is not a bijection of [0," +
                           std::to_string(domain) + ") onto [0," + std::to_string(codomain) +
                           "): " + describe(out));
  return out;
}

// ---------------------------------------------------------------------------

void CheckReport::append(const CheckReport& other, const std::string& prefix) {
  samples += other.samples;
  checks += other.checks;
  for (Violation v : other.violations) {
    v.check = prefix + ":" + v.check;
    violations.push_back(std::move(v));
  }
}

std::string describe(const IsoGraph& g) {
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (const auto& [x, y] : g) {
    out << (first ? "" : ", ") << x << "->" << y;
    first = false;
  }
  out << '}';
  return out.str();
}

namespace {

std::string value_at(const IsoGraph& g, Code x) {
  auto it = g.find(x);
  return it == g.end() ? "undefined" : std::to_string(it->second);
}

// Pointwise comparison on [0, n); one violation per differing element.
void compare_on(CheckReport& r, std::size_t sample, const std::string& check, const IsoGraph& expected,
                const IsoGraph& actual, Code n) {
  ++r.checks;
  for (Code x = 0; x < n; ++x) {
    const std::string e = value_at(expected, x);
    const std::string a = value_at(actual, x);
    if (e != a) r.violations.push_back(Violation{sample, check, x, e, a});
  }
}

// Facts agree; negative facts too when both sides carry them.
bool same_content(const StructurePresentation& x, const StructurePresentation& y, Stage stage) {
  if (x.language() != y.language() || x.universe() != y.universe()) return false;
  if (x.facts_at(stage) != y.facts_at(stage)) return false;
  if (!x.total() || !y.total()) return true;
  return x.same_at(y, stage);
}

struct FactDifference {
  Atom atom;
  bool in_target;  // holds in `target`, not in `moved`
};

std::optional<FactDifference> first_fact_difference(const StructurePresentation& moved,
                                                    const StructurePresentation& target,
                                                    Stage stage) {
  const std::vector<Atom> a = moved.facts_at(stage);
  const std::vector<Atom> b = target.facts_at(stage);
  std::vector<Atom> only_a, only_b;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(only_a));
  std::set_difference(b.begin(), b.end(), a.begin(), a.end(), std::back_inserter(only_b));
  if (only_a.empty() && only_b.empty()) return std::nullopt;
  if (only_a.empty() || (!only_b.empty() && only_b.front() < only_a.front()))
    return FactDifference{only_b.front(), true};
  return FactDifference{only_a.front(), false};
}

}  // namespace

LawSample make_law_sample(const StructurePresentation& a, const IsoGraph& f, const IsoGraph& g) {
  StructurePresentation b = transport(a, f);
  StructurePresentation c = transport(b, g);
  return LawSample{a, f, std::move(b), g, std::move(c)};
}

IsoSample make_iso_sample(const StructurePresentation& a, const IsoGraph& h) {
  return IsoSample{a, h, transport(a, h)};
}

CheckReport check_functor_laws(const FunctorChain& f, const std::vector<LawSample>& samples,
                               Stage stage) {
  CheckReport r;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const LawSample& s = samples[k];
    ++r.samples;
    const Code n = f.apply_object(s.a, stage).universe();
    const IsoGraph fid = f.apply_morphism(s.a, identity_graph(s.a.universe()), s.a, stage);
    compare_on(r, k, "identity", identity_graph(n), fid, n);

    const IsoGraph whole = f.apply_morphism(s.a, compose(s.g, s.f), s.c, stage);
    const IsoGraph parts =
        compose(f.apply_morphism(s.b, s.g, s.c, stage), f.apply_morphism(s.a, s.f, s.b, stage));
    compare_on(r, k, "composition", parts, whole, n);
  }
  return r;
}

CheckReport check_effective_isomorphism(const FunctorChain& f, const FunctorChain& g,
                                        const IsoWitness& lambda,
                                        const std::vector<IsoSample>& samples, Stage stage) {
  CheckReport r;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const IsoSample& s = samples[k];
    ++r.samples;
    const StructurePresentation fa = f.apply_object(s.a, stage);
    const StructurePresentation ga = g.apply_object(s.a, stage);
    const StructurePresentation fb = f.apply_object(s.b, stage);
    const StructurePresentation gb = g.apply_object(s.b, stage);
    const IsoGraph la = run_witness(lambda, s.a, fa.universe(), ga.universe(), stage);
    const IsoGraph lb = run_witness(lambda, s.b, fb.universe(), gb.universe(), stage);

    ++r.checks;
    const StructurePresentation moved = transport(fa, la);
    if (!same_content(moved, ga, stage)) {
      Violation v{k, "witness-isomorphism", std::nullopt,
                  "isomorphism " + f.name() + "(A) -> " + g.name() + "(A)",
                  describe(la) + " does not preserve the structure"};
      if (auto d = first_fact_difference(moved, ga, stage)) {
        if (!d->atom.args.empty()) v.element = d->atom.args.front();
        v.expected = to_string(d->atom) + (d->in_target ? " holds" : " fails");
        v.actual = to_string(d->atom) + (d->in_target ? " fails" : " holds") + " under " +
                   describe(la);
      }
      r.violations.push_back(std::move(v));
    }

    const IsoGraph fh = f.apply_morphism(s.a, s.h, s.b, stage);
    const IsoGraph gh = g.apply_morphism(s.a, s.h, s.b, stage);
    compare_on(r, k, "commutation", compose(gh, la), compose(lb, fh), fa.universe());
  }
  return r;
}

CheckReport check_pseudo_inverse(const EffectivizedFunctor& f, const EffectivizedFunctor& g,
                                 const IsoWitness& lambda_c, const IsoWitness& lambda_d,
                                 const std::vector<IsoSample>& samples_c,
                                 const std::vector<IsoSample>& samples_d, Stage stage) {
  const FunctorChain id;
  const FunctorChain gf = FunctorChain::then(f, g);
  const FunctorChain fg = FunctorChain::then(g, f);

  CheckReport r;
  r.append(check_effective_isomorphism(id, gf, lambda_c, samples_c, stage), "GF~id");
  r.append(check_effective_isomorphism(id, fg, lambda_d, samples_d, stage), "FG~id");

  CheckReport compat;
  for (std::size_t k = 0; k < samples_c.size(); ++k) {
    const StructurePresentation& a = samples_c[k].a;
    const StructurePresentation fa = apply_object(f, a, stage);
    const StructurePresentation gfa = apply_object(g, fa, stage);
    const StructurePresentation fgfa = apply_object(f, gfa, stage);
    const IsoGraph lc = run_witness(lambda_c, a, a.universe(), gfa.universe(), stage);
    const IsoGraph ld = run_witness(lambda_d, fa, fa.universe(), fgfa.universe(), stage);
    compare_on(compat, k, "F(Lambda_C)", apply_morphism(f, a, lc, gfa, stage), ld, fa.universe());
  }
  for (std::size_t k = 0; k < samples_d.size(); ++k) {
    const StructurePresentation& b = samples_d[k].a;
    const StructurePresentation gb = apply_object(g, b, stage);
    const StructurePresentation fgb = apply_object(f, gb, stage);
    const StructurePresentation gfgb = apply_object(g, fgb, stage);
    const IsoGraph ld = run_witness(lambda_d, b, b.universe(), fgb.universe(), stage);
    const IsoGraph lc = run_witness(lambda_c, gb, gb.universe(), gfgb.universe(), stage);
    compare_on(compat, k, "G(Lambda_D)", apply_morphism(g, b, ld, fgb, stage), lc, gb.universe());
  }
  r.append(compat, "compatibility");
  return r;
}

}  // namespace efunc
