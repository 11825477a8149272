#include "efunc/transforms.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "efunc/errors.hpp"

namespace efunc {

AlphaString alpha_string(const CodeSet& p, const RelationalLanguage& language) {
  AlphaString a;
  a.source = p;
  Code top = 0;
  for (Code c : p) {
    decode_atom(c, language, DiagramFormat::atomic);
    if (p.contains(dual(c)))
      throw InconsistentDiagram("diagram holds both " + std::to_string(c) + " and its dual " +
                                std::to_string(dual(c)));
    top = std::max({top, c + 1, dual(c) + 1});
  }
  a.values.assign(top, std::nullopt);
  for (Code c : p) {
    a.values[c] = true;
    a.values[dual(c)] = false;
  }
  a.totalized.resize(top);
  for (Code x = 0; x < top; ++x) a.totalized[x] = a.values[x].value_or(false);
  return a;
}

std::optional<CodeSet> diagram_premise(const QueryMap& q) {
  CodeSet p;
  for (const auto& [z, v] : q) p.insert(v ? z : dual(z));
  for (Code c : p)
    if (p.contains(dual(c))) return std::nullopt;
  return p;
}

namespace {

bool below(const CodeSet& s, Code bound) { return s.empty() || *s.rbegin() < bound; }

bool decodes(Code c, const RelationalLanguage& language) {
  try {
    decode_atom(c, language, DiagramFormat::atomic);
    return true;
  } catch (const DecodeError&) {
    return false;
  }
}

}  // namespace

EnumOperator turing_to_enum_diagram(const TuringFunctional& phi, const RelationalLanguage& language,
                                    Code code_bound) {
  phi.validate();
  std::vector<EnumAxiom> out;
  for (const QueryAxiom& ax : phi.axioms()) {
    if (ax.output != 1 || ax.input >= code_bound) continue;
    auto p = diagram_premise(ax.queries);
    if (!p || !below(*p, code_bound)) continue;
    if (!std::all_of(p->begin(), p->end(), [&](Code c) { return decodes(c, language); })) continue;
    out.push_back(EnumAxiom{std::move(*p), ax.input, ax.stage});
  }
  return EnumOperator(std::move(out));
}

EnumOperator star_to_enum(const TuringFunctional& phi_star, const RelationalLanguage& lang_a,
                          const RelationalLanguage& lang_b, Code code_bound, RangeReading reading) {
  if (phi_star.shape() == OracleShape::positive_join ||
      phi_star.shape() == OracleShape::positive_diagram)
    throw FormatError("star_to_enum reads atomic-diagram joins only, not " +
                      to_string(phi_star.shape()));
  phi_star.validate();

  std::vector<EnumAxiom> out;
  const auto& axioms = phi_star.axioms();
  for (std::size_t k = 0; k < axioms.size(); ++k) {
    const QueryAxiom& ax = axioms[k];
    QueryMap cols[3];
    for (const auto& [z, v] : ax.queries) cols[z % 3].emplace(z / 3, v);

    for (std::size_t side : {0u, 2u}) {
      const RelationalLanguage& lang = side == 0 ? lang_a : lang_b;
      for (const auto& [z, v] : cols[side])
        if (!decodes(z, lang))
          throw MalformedFunctional("axiom #" + std::to_string(k) + " queries " +
                                    std::to_string(3 * z + side) +
                                    ", which is not an atom of column " + std::to_string(side));
    }
    auto b = diagram_premise(cols[0]);
    auto c = diagram_premise(cols[2]);
    if (!b || !c) continue;

    // The 1-answers fix tau; they must already form a partial injection.
    IsoGraph fixed;
    CodeSet range;
    bool injective = true;
    for (const auto& [z, v] : cols[1]) {
      if (!v) continue;
      auto [u, w] = cantor_unpair(z);
      if (fixed.contains(u) || range.contains(w)) {
        injective = false;
        break;
      }
      fixed.emplace(u, w);
      range.insert(w);
    }
    if (!injective) continue;

    CodeSet forbidden = range;
    std::map<Code, CodeSet> zeros;
    for (const auto& [z, v] : cols[1]) {
      auto [u, w] = cantor_unpair(z);
      if (reading == RangeReading::all_mentioned) forbidden.insert(w);
      if (!v && !fixed.contains(u)) zeros[u].insert(w);
    }

    CodeSet base;
    for (Code x : *b) base.insert(join_code(x, 0, 3));
    for (Code x : *c) base.insert(join_code(x, 2, 3));
    for (const auto& [u, w] : fixed) base.insert(join_code(cantor_pair(u, w), 1, 3));
    if (!below(base, code_bound)) continue;

    // Candidate images for the u's that only carry 0-answers.
    std::vector<Code> open;
    std::vector<std::vector<Code>> candidates;
    for (const auto& [u, ws] : zeros) {
      std::vector<Code> cand;
      for (Code z = 0; join_code(cantor_pair(u, z), 1, 3) < code_bound; ++z)
        if (!forbidden.contains(z) && !ws.contains(z)) cand.push_back(z);
      open.push_back(u);
      candidates.push_back(std::move(cand));
    }

    const Code conclusion = cantor_pair(ax.input, ax.output);
    CodeSet used;
    CodeSet premise = base;
    std::function<void(std::size_t)> choose = [&](std::size_t i) {
      if (i == open.size()) {
        out.push_back(EnumAxiom{premise, conclusion, ax.stage});
        return;
      }
      for (Code z : candidates[i]) {
        if (used.contains(z)) continue;
        const Code g = join_code(cantor_pair(open[i], z), 1, 3);
        used.insert(z);
        premise.insert(g);
        choose(i + 1);
        premise.erase(g);
        used.erase(z);
      }
    };
    choose(0);
  }
  return EnumOperator(std::move(out));
}

TuringFunctional enum_to_star(const EnumOperator& psi_star, Stage stage_budget,
                              DiagramFormat format) {
  std::vector<QueryAxiom> out;
  for (const EnumAxiom& ax : psi_star.available(stage_budget)) {
    QueryAxiom q;
    for (Code c : ax.premise) q.queries.emplace(c, true);
    auto [x, y] = cantor_unpair(ax.conclusion);
    q.input = x;
    q.output = y;
    q.stage = ax.stage;
    out.push_back(std::move(q));
  }
  return TuringFunctional(std::move(out), format == DiagramFormat::atomic
                                              ? OracleShape::atomic_join
                                              : OracleShape::positive_join);
}

TuringFunctional enum_to_turing_diagram(const EnumOperator& psi, const RelationalLanguage& language,
                                        Stage stage_budget) {
  std::vector<QueryAxiom> out;
  for (const EnumAxiom& ax : psi.available(stage_budget)) {
    decode_atom(ax.conclusion, language, DiagramFormat::atomic);
    QueryMap q;
    for (Code c : ax.premise) q.emplace(c, true);
    out.push_back(QueryAxiom{q, ax.conclusion, 1, ax.stage});
    out.push_back(QueryAxiom{std::move(q), dual(ax.conclusion), 0, ax.stage});
  }
  return TuringFunctional(std::move(out), OracleShape::atomic_diagram);
}

Decision decide_atom(const EnumOperator& psi, const CodeSet& oracle, Code x, Stage stage_budget) {
  const CodeSet out = apply_enum_operator(psi, oracle, stage_budget);
  const bool pos = out.contains(x);
  const bool neg = out.contains(dual(x));
  if (pos && neg)
    throw InconsistentDiagram("operator enumerates both " + std::to_string(x) + " and its dual");
  if (pos) return Decision::yes;
  if (neg) return Decision::no;
  return Decision::insufficient_budget;
}

}  // namespace efunc
