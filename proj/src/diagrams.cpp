#include "efunc/diagrams.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

#include "efunc/errors.hpp"

namespace efunc {

void RelationalLanguage::validate() const {
  for (std::size_t i = 0; i < arities.size(); ++i)
    if (arities[i] == 0) throw CodingError("relation " + std::to_string(i) + " has arity 0");
}

std::string to_string(const Atom& atom) {
  std::ostringstream out;
  out << 'R' << atom.relation << '(';
  for (std::size_t i = 0; i < atom.args.size(); ++i) out << (i ? "," : "") << atom.args[i];
  out << ')';
  return out.str();
}

StructurePresentation::StructurePresentation(RelationalLanguage language, Code universe,
                                             bool total)
    : language_(std::move(language)), universe_(universe), total_(total) {
  language_.validate();
}

void StructurePresentation::check_atom(const Atom& atom) const {
  if (atom.relation >= language_.size())
    throw BoundsError("relation index " + std::to_string(atom.relation) + " outside language");
  if (atom.args.size() != language_.arity(atom.relation))
    throw BoundsError("atom " + to_string(atom) + " has the wrong arity");
  for (Code a : atom.args)
    if (a >= universe_)
      throw BoundsError("atom " + to_string(atom) + " leaves the universe window " +
                        std::to_string(universe_));
}

void StructurePresentation::add_fact(const Atom& atom, Stage stage) {
  check_atom(atom);
  auto [it, inserted] = facts_.emplace(atom, stage);
  if (!inserted) it->second = std::min(it->second, stage);
}

void StructurePresentation::add_negative_fact(const Atom& atom, Stage stage) {
  check_atom(atom);
  auto [it, inserted] = negative_facts_.emplace(atom, stage);
  if (!inserted) it->second = std::min(it->second, stage);
}

bool StructurePresentation::holds(const Atom& atom, Stage stage) const {
  auto it = facts_.find(atom);
  return it != facts_.end() && it->second <= stage;
}

bool StructurePresentation::fails(const Atom& atom, Stage stage) const {
  auto it = negative_facts_.find(atom);
  return it != negative_facts_.end() && it->second <= stage;
}

std::vector<Atom> StructurePresentation::facts_at(Stage stage) const {
  std::vector<Atom> out;
  for (const auto& [a, s] : facts_)
    if (s <= stage) out.push_back(a);
  return out;
}

Stage StructurePresentation::final_stage() const noexcept {
  Stage last = 0;
  for (const auto& [a, s] : facts_) last = std::max(last, s);
  for (const auto& [a, s] : negative_facts_) last = std::max(last, s);
  return last;
}

void StructurePresentation::check_total() const {
  if (!total_) throw TotalityError("presentation is not declared total");
  const Stage last = final_stage();
  for (const Atom& atom : all_atoms(language_, universe_)) {
    const bool pos = holds(atom, last);
    const bool neg = fails(atom, last);
    if (pos == neg)
      throw TotalityError("atom " + to_string(atom) +
                          (pos ? " is both asserted and denied" : " is undetermined"));
  }
}

StructurePresentation StructurePresentation::at(Stage stage) const {
  StructurePresentation out(language_, universe_, total_);
  for (const auto& [a, s] : facts_)
    if (s <= stage) out.facts_.emplace(a, 0);
  for (const auto& [a, s] : negative_facts_)
    if (s <= stage) out.negative_facts_.emplace(a, 0);
  return out;
}

bool StructurePresentation::same_at(const StructurePresentation& other, Stage stage) const {
  if (language_ != other.language_ || universe_ != other.universe_) return false;
  auto keys = [stage](const std::map<Atom, Stage>& m) {
    std::vector<Atom> out;
    for (const auto& [a, s] : m)
      if (s <= stage) out.push_back(a);
    return out;
  };
  return keys(facts_) == keys(other.facts_) &&
         keys(negative_facts_) == keys(other.negative_facts_);
}

std::vector<std::vector<Code>> all_tuples(Code universe, std::size_t arity) {
  std::vector<std::vector<Code>> out;
  if (universe == 0) return out;
  std::vector<Code> cur(arity, 0);
  while (true) {
    out.push_back(cur);
    std::size_t i = arity;
    while (i > 0) {
      --i;
      if (++cur[i] < universe) break;
      cur[i] = 0;
      if (i == 0) return out;
    }
    if (arity == 0) return out;
  }
}

std::vector<Atom> all_atoms(const RelationalLanguage& language, Code universe) {
  std::vector<Atom> out;
  for (std::size_t i = 0; i < language.size(); ++i)
    for (auto& t : all_tuples(universe, language.arity(i))) out.push_back(Atom{i, std::move(t)});
  return out;
}

// ---------------------------------------------------------------------------

std::string to_string(DiagramFormat format) {
  return format == DiagramFormat::atomic ? "atomic" : "positive";
}

Code atom_code(const RelationalLanguage& language, const Atom& atom) {
  if (atom.relation >= language.size())
    throw CodingError("relation index " + std::to_string(atom.relation) + " outside language");
  return cantor_pair(atom.relation, tuple_encode(atom.args, language.arity(atom.relation)));
}

Code atomic_code(const RelationalLanguage& language, const Atom& atom, bool negated) {
  return 2 * atom_code(language, atom) + (negated ? 1 : 0);
}

Code positive_eq_code(Code x, Code y) { return 3 * cantor_pair(x, y); }
Code positive_neq_code(Code x, Code y) { return 3 * cantor_pair(x, y) + 1; }
Code positive_rel_code(const RelationalLanguage& language, const Atom& atom) {
  return 3 * atom_code(language, atom) + 2;
}

std::string Literal::to_string() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::equal: out << args.at(0) << " = " << args.at(1); break;
    case Kind::not_equal: out << args.at(0) << " != " << args.at(1); break;
    case Kind::negated_relation: out << "not " << efunc::to_string(atom()); break;
    case Kind::relation: out << efunc::to_string(atom()); break;
  }
  return out.str();
}

namespace {

Atom decode_relation_atom(Code inner, const RelationalLanguage& language) {
  auto [i, u] = cantor_unpair(inner);
  if (i >= language.size())
    throw DecodeError("code names relation " + std::to_string(i) + " outside a language of " +
                      std::to_string(language.size()));
  return Atom{static_cast<std::size_t>(i), tuple_decode(u, language.arity(i))};
}

}  // namespace

Literal decode_atom(Code c, const RelationalLanguage& language, DiagramFormat format) {
  Literal lit;
  if (format == DiagramFormat::atomic) {
    Atom a = decode_relation_atom(c / 2, language);
    lit.kind = (c % 2 == 0) ? Literal::Kind::relation : Literal::Kind::negated_relation;
    lit.relation = a.relation;
    lit.args = std::move(a.args);
    return lit;
  }
  switch (c % 3) {
    case 0:
    case 1: {
      auto [x, y] = cantor_unpair(c / 3);
      lit.kind = (c % 3 == 0) ? Literal::Kind::equal : Literal::Kind::not_equal;
      lit.args = {x, y};
      return lit;
    }
    default: {
      Atom a = decode_relation_atom(c / 3, language);
      lit.kind = Literal::Kind::relation;
      lit.relation = a.relation;
      lit.args = std::move(a.args);
      return lit;
    }
  }
}

Code encode_literal(const Literal& lit, const RelationalLanguage& language,
                    DiagramFormat format) {
  if (format == DiagramFormat::atomic) {
    if (lit.kind == Literal::Kind::relation) return atomic_code(language, lit.atom(), false);
    if (lit.kind == Literal::Kind::negated_relation) return atomic_code(language, lit.atom(), true);
    throw CodingError("equality literals have no atomic-diagram code");
  }
  switch (lit.kind) {
    case Literal::Kind::equal: return positive_eq_code(lit.args.at(0), lit.args.at(1));
    case Literal::Kind::not_equal: return positive_neq_code(lit.args.at(0), lit.args.at(1));
    case Literal::Kind::relation: return positive_rel_code(language, lit.atom());
    case Literal::Kind::negated_relation: break;
  }
  throw CodingError("negated literals have no positive-diagram code");
}

CodeSet atomic_diagram(const StructurePresentation& s, Stage stage) {
  s.check_total();
  CodeSet out;
  for (const auto& [a, st] : s.facts())
    if (st <= stage) out.insert(atomic_code(s.language(), a, false));
  for (const auto& [a, st] : s.negative_facts())
    if (st <= stage) out.insert(atomic_code(s.language(), a, true));
  return out;
}

CodeSet positive_diagram(const StructurePresentation& s, Stage stage) {
  CodeSet out;
  const Code n = s.universe();
  for (Code x = 0; x < n; ++x)
    for (Code y = 0; y < n; ++y) out.insert(x == y ? positive_eq_code(x, y) : positive_neq_code(x, y));
  for (const auto& [a, st] : s.facts())
    if (st <= stage) out.insert(positive_rel_code(s.language(), a));
  return out;
}

CodeSet diagram(const StructurePresentation& s, Stage stage, DiagramFormat format) {
  return format == DiagramFormat::atomic ? atomic_diagram(s, stage) : positive_diagram(s, stage);
}

// ---------------------------------------------------------------------------

Enumeration Enumeration::identity(Code n) {
  Enumeration f;
  f.values.resize(n);
  for (Code x = 0; x < n; ++x) f.values[x] = x;
  return f;
}

bool Enumeration::covers(Code target) const {
  std::vector<bool> hit(target, false);
  for (Code v : values)
    if (v < target) hit[v] = true;
  return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

IsoGraph identity_graph(Code n) {
  IsoGraph g;
  for (Code x = 0; x < n; ++x) g.emplace_hint(g.end(), x, x);
  return g;
}

IsoGraph compose(const IsoGraph& g, const IsoGraph& f) {
  IsoGraph out;
  for (const auto& [x, y] : f) {
    auto it = g.find(y);
    if (it != g.end()) out.emplace_hint(out.end(), x, it->second);
  }
  return out;
}

IsoGraph inverse(const IsoGraph& f) {
  IsoGraph out;
  for (const auto& [x, y] : f) {
    auto [it, inserted] = out.emplace(y, x);
    if (!inserted) throw CompositionError("map is not injective at image " + std::to_string(y));
  }
  return out;
}

bool is_partial_injection(const IsoGraph& f) {
  CodeSet image;
  for (const auto& [x, y] : f)
    if (!image.insert(y).second) return false;
  return true;
}

bool is_bijection_on(const IsoGraph& f, Code n) {
  if (f.size() != n) return false;
  CodeSet image;
  for (const auto& [x, y] : f) {
    if (x >= n || y >= n) return false;
    if (!image.insert(y).second) return false;
  }
  return true;
}

CodeSet graph_codes(const IsoGraph& f) {
  CodeSet out;
  for (const auto& [x, y] : f) out.insert(cantor_pair(x, y));
  return out;
}

StructurePresentation transport(const StructurePresentation& s, const IsoGraph& pi) {
  if (!is_bijection_on(pi, s.universe()))
    throw CompositionError("transport needs a bijection of the universe window");
  StructurePresentation out(s.language(), s.universe(), s.total());
  auto rename = [&pi](const Atom& a) {
    Atom b = a;
    for (Code& x : b.args) x = pi.at(x);
    return b;
  };
  for (const auto& [a, st] : s.facts()) out.add_fact(rename(a), st);
  for (const auto& [a, st] : s.negative_facts()) out.add_negative_fact(rename(a), st);
  return out;
}

namespace {

// Calls fn(tuple) for every tuple in the product of the given choice lists.
template <class Fn>
void for_each_product(const std::vector<const std::vector<Code>*>& choices, Fn&& fn) {
  for (const auto* c : choices)
    if (c->empty()) return;
  std::vector<std::size_t> idx(choices.size(), 0);
  std::vector<Code> cur(choices.size());
  while (true) {
    for (std::size_t k = 0; k < choices.size(); ++k) cur[k] = (*choices[k])[idx[k]];
    fn(cur);
    std::size_t k = choices.size();
    while (k > 0) {
      --k;
      if (++idx[k] < choices[k]->size()) break;
      idx[k] = 0;
      if (k == 0) return;
    }
    if (choices.empty()) return;
  }
}

}  // namespace

CodeSet pullback(const Enumeration& f, const StructurePresentation& s, Stage stage) {
  CodeSet out;
  const Code n = f.size();
  for (Code x = 0; x < n; ++x)
    for (Code y = 0; y < n; ++y)
      out.insert(f(x) == f(y) ? positive_eq_code(x, y) : positive_neq_code(x, y));

  std::map<Code, std::vector<Code>> preimages;
  for (Code x = 0; x < n; ++x) preimages[f(x)].push_back(x);
  static const std::vector<Code> kNone;

  for (const auto& [atom, st] : s.facts()) {
    if (st > stage) continue;
    std::vector<const std::vector<Code>*> choices;
    for (Code a : atom.args) {
      auto it = preimages.find(a);
      choices.push_back(it == preimages.end() ? &kNone : &it->second);
    }
    for_each_product(choices, [&](const std::vector<Code>& t) {
      out.insert(positive_rel_code(s.language(), Atom{atom.relation, t}));
    });
  }
  return out;
}

Enumeration EqualityClasses::as_enumeration() const {
  Enumeration e;
  e.values.assign(class_of.begin(), class_of.end());
  return e;
}

EqualityClasses equality_classes(const CodeSet& pb, Code window) {
  std::vector<std::vector<bool>> eq(window, std::vector<bool>(window, false));
  for (Code c : pb) {
    if (c % 3 != 0) continue;
    auto [x, y] = cantor_unpair(c / 3);
    if (x >= window || y >= window)
      throw MalformedPullback("=-column mentions " + std::to_string(std::max(x, y)) +
                              " outside the window");
    eq[x][y] = true;
  }
  for (Code x = 0; x < window; ++x) {
    if (!eq[x][x]) throw MalformedPullback("=-column is not reflexive at " + std::to_string(x));
    for (Code y = 0; y < window; ++y)
      if (eq[x][y] != eq[y][x])
        throw MalformedPullback("=-column is not symmetric at (" + std::to_string(x) + "," +
                                std::to_string(y) + ")");
  }

  EqualityClasses classes;
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  classes.class_of.assign(window, kUnset);
  for (Code x = 0; x < window; ++x) {
    if (classes.class_of[x] != kUnset) continue;
    const std::size_t k = classes.members.size();
    std::vector<Code> members;
    for (Code y = x; y < window; ++y)
      if (eq[x][y]) {
        if (classes.class_of[y] != kUnset)
          throw MalformedPullback("=-column is not transitive at " + std::to_string(y));
        classes.class_of[y] = k;
        members.push_back(y);
      }
    for (Code a : members)
      for (Code b : members)
        if (!eq[a][b])
          throw MalformedPullback("=-column is not transitive at (" + std::to_string(a) + "," +
                                  std::to_string(b) + ")");
    classes.members.push_back(std::move(members));
  }
  // A member related to something outside its class breaks transitivity.
  for (Code x = 0; x < window; ++x)
    for (Code y = 0; y < window; ++y)
      if (eq[x][y] && classes.class_of[x] != classes.class_of[y])
        throw MalformedPullback("=-column is not transitive at (" + std::to_string(x) + "," +
                                std::to_string(y) + ")");
  return classes;
}

StructurePresentation quotient_by_equality(const CodeSet& pb, Code window,
                                           const RelationalLanguage& language) {
  const EqualityClasses classes = equality_classes(pb, window);
  StructurePresentation out(language, classes.size(), false);
  for (Code c : pb) {
    if (c % 3 != 2) continue;
    Literal lit = decode_atom(c, language, DiagramFormat::positive);
    Atom a = lit.atom();
    for (Code& x : a.args) {
      if (x >= window)
        throw MalformedPullback("relation atom mentions " + std::to_string(x) +
                                " outside the window");
      x = classes.class_of[x];
    }
    out.add_fact(a, 0);
  }
  return out;
}

CodeSet spread_relations(const CodeSet& p_target, const CodeSet& pb_source, Code window,
                         const RelationalLanguage& language) {
  const EqualityClasses classes = equality_classes(pb_source, window);
  CodeSet out;
  for (Code c : p_target) {
    if (c % 3 != 2) continue;
    Literal lit = decode_atom(c, language, DiagramFormat::positive);
    std::vector<const std::vector<Code>*> choices;
    for (Code k : lit.args) {
      if (k >= classes.size())
        throw InsufficientClasses("class index " + std::to_string(k) + " but only " +
                                  std::to_string(classes.size()) + " classes");
      choices.push_back(&classes.members[k]);
    }
    for_each_product(choices, [&](const std::vector<Code>& t) {
      out.insert(atom_code(language, Atom{lit.relation, t}));
    });
  }
  return out;
}

Enumeration compose_enumeration(const Enumeration& f, const IsoGraph& i) {
  if (!is_partial_injection(i)) throw CompositionError("isomorphism graph is not injective");
  Enumeration out;
  out.partial = f.partial;
  out.values.reserve(f.size());
  for (Code x = 0; x < f.size(); ++x) {
    auto it = i.find(f(x));
    if (it == i.end())
      throw CompositionError("isomorphism undefined at f(" + std::to_string(x) +
                             ") = " + std::to_string(f(x)));
    out.values.push_back(it->second);
  }
  return out;
}

}  // namespace efunc

namespace efunc {

CESchedule::CESchedule(std::vector<std::pair<Code, Stage>> entries) : entries_(std::move(entries)) {
  CodeSet seen;
  for (const auto& [e, s] : entries_)
    if (!seen.insert(e).second)
      throw BoundsError("schedule lists element " + std::to_string(e) + " twice");
}

std::optional<Stage> CESchedule::stage_of(Code element) const {
  for (const auto& [e, s] : entries_)
    if (e == element) return s;
  return std::nullopt;
}

bool CESchedule::contains(Code element, Stage stage) const {
  auto s = stage_of(element);
  return s && *s <= stage;
}

Stage CESchedule::final_stage() const noexcept {
  Stage last = 0;
  for (const auto& [e, s] : entries_) last = std::max(last, s);
  return last;
}

std::vector<std::pair<Code, Stage>> CESchedule::by_stage() const {
  auto out = entries_;
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::tie(a.second, a.first) < std::tie(b.second, b.first);
  });
  return out;
}

}  // namespace efunc
