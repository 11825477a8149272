#include "efunc/gallery.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "efunc/errors.hpp"

namespace efunc {

namespace {

constexpr std::size_t kZero = 0;
constexpr std::size_t kSucc = 1;
constexpr std::size_t kK = 2;

const RelationalLanguage kGraph{{2}};

Code edge_code(Code u, Code v) { return positive_rel_code(kGraph, Atom{0, {u, v}}); }

// Adds a fact only if it has entered by `cutoff`.
struct StagedBuilder {
  StructurePresentation& s;
  Stage cutoff;

  void fact(const Atom& a, Stage st) {
    if (st <= cutoff) s.add_fact(a, st);
  }
  void negative(const Atom& a, Stage st) {
    if (st <= cutoff) s.add_negative_fact(a, st);
  }
  void edge(Code u, Code v, Stage st) {
    fact(Atom{0, {u, v}}, st);
    fact(Atom{0, {v, u}}, st);
  }
};

std::vector<std::pair<Code, Stage>> entries_below(const CESchedule& schedule, Code window) {
  std::vector<std::pair<Code, Stage>> out;
  for (const auto& e : schedule.by_stage())
    if (e.first < window) out.push_back(e);
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

RelationalLanguage successor_language(bool with_k) {
  return with_k ? RelationalLanguage{{1, 2, 1}} : RelationalLanguage{{1, 2}};
}

StructurePresentation build_successor(SuccessorFlavor flavor, const CESchedule& schedule,
                                      Code window, Stage stage) {
  const bool with_k = flavor != SuccessorFlavor::plain;
  StructurePresentation s(successor_language(with_k), window, true);
  StagedBuilder b{s, stage};
  for (Code x = 0; x < window; ++x) {
    if (x == 0)
      b.fact(Atom{kZero, {x}}, 0);
    else
      b.negative(Atom{kZero, {x}}, 0);
    for (Code y = 0; y < window; ++y) {
      if (y == x + 1)
        b.fact(Atom{kSucc, {x, y}}, 0);
      else
        b.negative(Atom{kSucc, {x, y}}, 0);
    }
  }
  if (!with_k) return s;

  Stage last = 0;
  for (const auto& [e, st] : entries_below(schedule, window)) last = std::max(last, st);
  for (Code x = 0; x < window; ++x) {
    const auto st = schedule.stage_of(x);
    const bool in_k = st.has_value();
    const bool holds = (flavor == SuccessorFlavor::with_k) == in_k;
    const Stage when = in_k ? *st : last;
    if (holds)
      b.fact(Atom{kK, {x}}, when);
    else
      b.negative(Atom{kK, {x}}, when);
  }
  return s;
}

TuringFunctional identity_morphism_functional(Code window, DiagramFormat format) {
  std::vector<QueryAxiom> axioms;
  for (Code x = 0; x < window; ++x) {
    QueryMap q;
    for (Code y = 0; y < window; ++y) {
      q[join_code(cantor_pair(x, y), 1, 3)] = true;
      axioms.push_back(QueryAxiom{q, x, y, 0});
      q[join_code(cantor_pair(x, y), 1, 3)] = false;
    }
  }
  return TuringFunctional(std::move(axioms), format == DiagramFormat::atomic
                                                 ? OracleShape::atomic_join
                                                 : OracleShape::positive_join);
}

EnumOperator identity_morphism_operator(Code window) {
  std::vector<EnumAxiom> axioms;
  for (Code x = 0; x < window; ++x)
    for (Code y = 0; y < window; ++y)
      axioms.push_back(EnumAxiom{{join_code(cantor_pair(x, y), 1, 3)}, cantor_pair(x, y), 0});
  return EnumOperator(std::move(axioms));
}

IsoWitness identity_witness_turing(Code window, DiagramFormat format) {
  std::vector<QueryAxiom> axioms;
  for (Code x = 0; x < window; ++x) axioms.push_back(QueryAxiom{{}, x, x, 0});
  return IsoWitness{"identity", TuringFunctional(std::move(axioms)), format};
}

IsoWitness identity_witness_enum(Code window) {
  std::vector<EnumAxiom> axioms;
  for (Code x = 0; x < window; ++x)
    axioms.push_back(EnumAxiom{{positive_eq_code(x, x)}, cantor_pair(x, x), 0});
  return IsoWitness{"identity", EnumOperator(std::move(axioms)), DiagramFormat::positive};
}

EffectivizedFunctor functor_flip(Code window) {
  const RelationalLanguage lang = successor_language(true);
  std::vector<QueryAxiom> axioms;
  for (const Atom& atom : all_atoms(lang, window)) {
    const Code x = atomic_code(lang, atom, false);
    const Code src = atom.relation == kK ? dual(x) : x;
    axioms.push_back(QueryAxiom{{{src, true}}, x, 1, 0});
    axioms.push_back(QueryAxiom{{{src, false}}, x, 0, 0});
    axioms.push_back(QueryAxiom{{{src, true}}, dual(x), 0, 0});
    axioms.push_back(QueryAxiom{{{src, false}}, dual(x), 1, 0});
  }
  return EffectivizedFunctor("flip", FunctorKind::computable, lang, lang,
                             TuringFunctional(std::move(axioms), OracleShape::atomic_diagram),
                             identity_morphism_functional(window, DiagramFormat::atomic));
}

EffectivizedFunctor functor_drop_K(Code window) {
  const RelationalLanguage from = successor_language(true);
  const RelationalLanguage to = successor_language(false);
  std::vector<EnumAxiom> axioms;
  for (Code x = 0; x < window; ++x) {
    for (Code y = 0; y < window; ++y) {
      const Code c = x == y ? positive_eq_code(x, y) : positive_neq_code(x, y);
      axioms.push_back(EnumAxiom{{c}, c, 0});
    }
  }
  for (const Atom& atom : all_atoms(to, window)) {
    const Code c = positive_rel_code(from, atom);
    axioms.push_back(EnumAxiom{{c}, positive_rel_code(to, atom), 0});
  }
  return EffectivizedFunctor("drop_K", FunctorKind::positive_enumerable, from, to,
                             EnumOperator(std::move(axioms)), identity_morphism_operator(window));
}

namespace {

// Elements reachable from a Zero fact by exactly k successor steps, each with
// one witnessing chain.
struct ChainLevels {
  std::vector<std::map<Code, std::optional<Code>>> levels;  // element -> predecessor
};

ChainLevels successor_chains(const CodeSet& snapshot, const RelationalLanguage& plain,
                             std::size_t depth) {
  std::map<Code, CodeSet> succ;
  ChainLevels chains;
  chains.levels.emplace_back();
  for (Code c : snapshot) {
    if (c % 3 != 2) continue;
    Literal lit;
    try {
      lit = decode_atom(c, plain, DiagramFormat::positive);
    } catch (const DecodeError&) {
      continue;
    }
    if (lit.relation == kZero) chains.levels[0].emplace(lit.args[0], std::nullopt);
    if (lit.relation == kSucc) succ[lit.args[0]].insert(lit.args[1]);
  }
  for (std::size_t j = 0; j < depth; ++j) {
    std::map<Code, std::optional<Code>> next;
    for (const auto& [u, pred] : chains.levels[j]) {
      auto it = succ.find(u);
      if (it == succ.end()) continue;
      for (Code v : it->second) next.emplace(v, u);
    }
    chains.levels.push_back(std::move(next));
  }
  return chains;
}

}  // namespace

EffectivizedFunctor functor_add_K(const CESchedule& schedule, Code window) {
  const RelationalLanguage from = successor_language(false);
  const RelationalLanguage to = successor_language(true);
  const auto entries = entries_below(schedule, window);
  const std::size_t depth = window;

  auto copied = [from](Code c) {
    try {
      decode_atom(c, from, DiagramFormat::positive);
      return true;
    } catch (const DecodeError&) {
      return false;
    }
  };

  StreamOperator op;
  op.name = "add_K";
  op.apply = [=](const CodeSet& snapshot, Stage stage) {
    CodeSet out;
    for (Code c : snapshot)
      if (copied(c)) out.insert(c);
    const ChainLevels chains = successor_chains(snapshot, from, depth);
    for (const auto& [k, st] : entries) {
      if (st > stage || k >= chains.levels.size()) continue;
      for (const auto& [x, pred] : chains.levels[k]) out.insert(positive_rel_code(to, Atom{kK, {x}}));
    }
    return out;
  };
  op.witness = [=](const CodeSet& snapshot, Stage stage, Code c) -> std::optional<CodeSet> {
    if (snapshot.contains(c) && copied(c)) return CodeSet{c};
    Literal lit;
    try {
      lit = decode_atom(c, to, DiagramFormat::positive);
    } catch (const DecodeError&) {
      return std::nullopt;
    }
    if (lit.kind != Literal::Kind::relation || lit.relation != kK) return std::nullopt;
    const ChainLevels chains = successor_chains(snapshot, from, depth);
    for (const auto& [k, st] : entries) {
      if (st > stage || k >= chains.levels.size()) continue;
      auto it = chains.levels[k].find(lit.args[0]);
      if (it == chains.levels[k].end()) continue;
      CodeSet premise;
      Code x = lit.args[0];
      for (std::size_t j = k; j > 0; --j) {
        const Code u = *chains.levels[j].at(x);
        premise.insert(positive_rel_code(from, Atom{kSucc, {u, x}}));
        x = u;
      }
      premise.insert(positive_rel_code(from, Atom{kZero, {x}}));
      return premise;
    }
    return std::nullopt;
  };
  return EffectivizedFunctor("add_K", FunctorKind::positive_enumerable, from, to, std::move(op),
                             identity_morphism_operator(window));
}

// ---------------------------------------------------------------------------

Code cycle_start(Code n) { return 1 + 3 * n + n * (n - (n > 0 ? 1 : 0)) / 2; }

Code cycle_graph_universe(Code window) { return cycle_start(window); }

IsoGraph cycle_relocation(Code window, std::optional<Code> zero_on_cycle) {
  IsoGraph pi = identity_graph(cycle_graph_universe(window));
  if (zero_on_cycle) {
    if (*zero_on_cycle >= window)
      throw BoundsError("cycle " + std::to_string(*zero_on_cycle) + " is outside the window");
    const Code v = cycle_start(*zero_on_cycle);
    pi[0] = v;
    pi[v] = 0;
  }
  return pi;
}

StructurePresentation build_cycle_graph(const CESchedule& schedule, Code window, Stage stage,
                                        std::optional<Code> zero_on_cycle) {
  StructurePresentation s(kGraph, cycle_graph_universe(window), false);
  StagedBuilder b{s, stage};
  b.fact(Atom{0, {0, 0}}, 0);
  for (Code n = 0; n < window; ++n) {
    const Code start = cycle_start(n);
    const Code len = n + 3;
    for (Code j = 0; j < len; ++j) b.edge(start + j, start + (j + 1) % len, 0);
  }
  for (const auto& [n, st] : entries_below(schedule, window)) b.edge(0, cycle_start(n), st);
  if (!zero_on_cycle) return s;
  return transport(s, cycle_relocation(window, zero_on_cycle));
}

// ---------------------------------------------------------------------------

std::string to_string(GadgetCopy copy) { return copy == GadgetCopy::B1 ? "B1" : "B2"; }

Code categoricity_universe(const CESchedule& schedule, Code window) {
  return 4 * window + 2 * entries_below(schedule, window).size();
}

Gadget gadget(const CESchedule& schedule, Code window, Code i) {
  if (i >= window) throw BoundsError("gadget " + std::to_string(i) + " is outside the window");
  Gadget g{4 * i, 4 * i + 1, 4 * i + 2, 4 * i + 3, std::nullopt, std::nullopt, std::nullopt};
  const auto entries = entries_below(schedule, window);
  for (std::size_t r = 0; r < entries.size(); ++r) {
    if (entries[r].first != i) continue;
    g.e0 = 4 * window + 2 * r;
    g.e1 = 4 * window + 2 * r + 1;
    g.entry = entries[r].second;
  }
  return g;
}

StructurePresentation build_categoricity_graph(GadgetCopy copy, const CESchedule& schedule,
                                               Code window, Stage stage) {
  StructurePresentation s(kGraph, categoricity_universe(schedule, window), false);
  StagedBuilder b{s, stage};
  if (window > 0) b.fact(Atom{0, {0, 0}}, 0);
  for (Code i = 0; i < window; ++i) {
    const Gadget g = gadget(schedule, window, i);
    if (i + 1 < window) b.edge(g.v, g.v + 4, 0);
    b.edge(g.v, g.a, 0);
    b.edge(g.v, g.b, 0);
    b.edge(g.a, g.s, 0);
    if (!g.entry) continue;
    if (copy == GadgetCopy::B1) {
      b.edge(g.b, *g.e0, *g.entry);
      b.edge(*g.e0, *g.e1, *g.entry);
    } else {
      b.edge(g.s, *g.e0, *g.entry);
      b.edge(g.b, *g.e1, *g.entry);
    }
  }
  return s;
}

IsoGraph unique_isomorphism_B1_B2(const CESchedule& schedule, Code window) {
  if (window == 0) throw BoundsError("categoricity graphs need at least one gadget");
  IsoGraph f;
  for (Code i = 0; i < window; ++i) {
    const Gadget g = gadget(schedule, window, i);
    f[g.v] = g.v;
    if (g.entry) {
      f[g.a] = g.b;
      f[g.b] = g.a;
      f[g.s] = *g.e1;
      f[*g.e0] = g.s;
      f[*g.e1] = *g.e0;
    } else {
      f[g.a] = g.a;
      f[g.b] = g.b;
      f[g.s] = g.s;
    }
  }
  const auto b1 = build_categoricity_graph(GadgetCopy::B1, schedule, window);
  const auto b2 = build_categoricity_graph(GadgetCopy::B2, schedule, window);
  if (!transport(b1, f).same_at(b2, kAllStages))
    throw Error("crossed matching is not an isomorphism B1 -> B2");
  return f;
}

// ---------------------------------------------------------------------------

ParityEvidence parity_evidence(const CodeSet& positive_diagram) {
  std::map<Code, CodeSet> adj;
  for (Code c : positive_diagram) {
    if (c % 3 != 2) continue;
    auto [i, t] = cantor_unpair(c / 3);
    if (i != 0) continue;
    auto [u, v] = cantor_unpair(t);
    adj[u].insert(v);
  }
  ParityEvidence ev;
  if (adj.contains(0) && adj[0].contains(0)) {
    ev.b1 = true;
    ev.premise_b1 = {edge_code(0, 0)};
  }

  std::vector<Code> path{0};
  CodeSet on_path{0};
  std::function<void(Code)> walk = [&](Code u) {
    if (ev.b1 && ev.b2) return;
    auto it = adj.find(u);
    if (it == adj.end()) return;
    for (Code v : it->second) {
      if (v == 0 && path.size() >= 3) {
        const bool even = path.size() % 2 == 0;
        bool& found = even ? ev.b1 : ev.b2;
        if (!found) {
          found = true;
          CodeSet& premise = even ? ev.premise_b1 : ev.premise_b2;
          for (std::size_t j = 0; j + 1 < path.size(); ++j)
            premise.insert(edge_code(path[j], path[j + 1]));
          premise.insert(edge_code(path.back(), 0));
        }
        continue;
      }
      if (on_path.contains(v)) continue;
      path.push_back(v);
      on_path.insert(v);
      walk(v);
      on_path.erase(v);
      path.pop_back();
    }
  };
  walk(0);
  return ev;
}

namespace {

// Reads one positive-diagram column of a join through the view: the element
// count from the =-column, then the edge relation.
CodeSet read_column(OracleView& view, std::size_t column) {
  Code n = 0;
  while (true) {
    const Code pos = join_code(positive_eq_code(n, n), column, 3);
    if (pos >= view.window() || !view.query(pos)) break;
    ++n;
  }
  CodeSet out;
  for (Code u = 0; u < n; ++u)
    for (Code v = 0; v < n; ++v) {
      const Code c = edge_code(u, v);
      if (view.query(join_code(c, column, 3))) out.insert(c);
    }
  return out;
}

std::optional<GadgetCopy> chosen_copy(const ParityEvidence& ev) {
  if (ev.b1 == ev.b2) return std::nullopt;
  return ev.b1 ? GadgetCopy::B1 : GadgetCopy::B2;
}

}  // namespace

EffectivizedFunctor functor_parity(const CESchedule& schedule, Code gadget_window) {
  StreamOperator object;
  object.name = "parity";
  object.apply = [=](const CodeSet& snapshot, Stage stage) {
    const ParityEvidence ev = parity_evidence(snapshot);
    CodeSet out;
    for (GadgetCopy copy : {GadgetCopy::B1, GadgetCopy::B2}) {
      if (!(copy == GadgetCopy::B1 ? ev.b1 : ev.b2)) continue;
      const CodeSet p = positive_diagram(
          build_categoricity_graph(copy, schedule, gadget_window, stage), kAllStages);
      out.insert(p.begin(), p.end());
    }
    return out;
  };
  object.witness = [=](const CodeSet& snapshot, Stage stage, Code c) -> std::optional<CodeSet> {
    const ParityEvidence ev = parity_evidence(snapshot);
    for (GadgetCopy copy : {GadgetCopy::B1, GadgetCopy::B2}) {
      if (!(copy == GadgetCopy::B1 ? ev.b1 : ev.b2)) continue;
      const CodeSet p = positive_diagram(
          build_categoricity_graph(copy, schedule, gadget_window, stage), kAllStages);
      if (p.contains(c)) return copy == GadgetCopy::B1 ? ev.premise_b1 : ev.premise_b2;
    }
    return std::nullopt;
  };

  OracleProgram morphism;
  morphism.name = "parity-morphism";
  morphism.run = [=](OracleView& view, Code x, Stage) -> std::optional<Code> {
    const auto from = chosen_copy(parity_evidence(read_column(view, 0)));
    const auto to = chosen_copy(parity_evidence(read_column(view, 2)));
    if (!from || !to) return std::nullopt;
    IsoGraph g;
    if (*from == *to)
      g = identity_graph(categoricity_universe(schedule, gadget_window));
    else if (*from == GadgetCopy::B1)
      g = unique_isomorphism_B1_B2(schedule, gadget_window);
    else
      g = inverse(unique_isomorphism_B1_B2(schedule, gadget_window));
    auto it = g.find(x);
    if (it == g.end()) return std::nullopt;
    return it->second;
  };

  const Code out_n = categoricity_universe(schedule, gadget_window);
  return EffectivizedFunctor("parity", FunctorKind::positive_star_enumerable, kGraph, kGraph,
                             std::move(object), std::move(morphism),
                             [out_n](Code) { return out_n; });
}

// ---------------------------------------------------------------------------

MonotonicityWitness find_monotonicity_violation(const CESchedule& schedule, Code window) {
  if (window < 2) throw BoundsError("the witness needs cycles 0 and 1 in the window");
  const auto entries = entries_below(schedule, window);
  if (entries.empty())
    throw SearchExhausted("no scheduled element below window " + std::to_string(window));
  const auto [i, t] = entries.front();

  std::vector<std::pair<Code, Stage>> before;
  std::vector<std::pair<Code, Stage>> upto;
  for (const auto& e : schedule.entries()) {
    if (e.second < t) before.push_back(e);
    if (e.second <= t) upto.push_back(e);
  }
  const CESchedule sx(before);
  const CESchedule sy(upto);

  const IsoGraph to_even = cycle_relocation(window, Code{1});
  const IsoGraph to_odd = cycle_relocation(window, Code{0});
  const IsoGraph f = compose(to_odd, inverse(to_even));

  auto oracle = [&](const CESchedule& s) {
    const auto hat = build_cycle_graph(s, window, kAllStages, Code{1});
    const auto tilde = build_cycle_graph(s, window, kAllStages, Code{0});
    return std::make_pair(positive_diagram(hat, kAllStages), positive_diagram(tilde, kAllStages));
  };
  const auto [px_hat, px_tilde] = oracle(sx);
  const auto [py_hat, py_tilde] = oracle(sy);

  MonotonicityWitness w;
  w.gadget = i;
  w.entry_stage = t;
  w.x_oracle = join3(px_hat, graph_codes(f), px_tilde);
  w.y_oracle = join3(py_hat, graph_codes(f), py_tilde);
  w.element = 4 * i + 1;
  w.required_at_x = unique_isomorphism_B1_B2(sx, window).at(w.element);
  w.required_at_y = unique_isomorphism_B1_B2(sy, window).at(w.element);

  const auto copy_of = [](const CodeSet& p) { return chosen_copy(parity_evidence(p)); };
  w.verified = std::includes(w.y_oracle.begin(), w.y_oracle.end(), w.x_oracle.begin(),
                             w.x_oracle.end()) &&
               copy_of(px_hat) == GadgetCopy::B1 && copy_of(px_tilde) == GadgetCopy::B2 &&
               copy_of(py_hat) == GadgetCopy::B1 && copy_of(py_tilde) == GadgetCopy::B2 &&
               w.required_at_x == 4 * i + 1 && w.required_at_y == 4 * i + 2;
  return w;
}

}  // namespace efunc
