#include "efunc/equivalence.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>

#include "efunc/errors.hpp"

namespace efunc {

std::vector<IsoGraph> all_permutations(Code n) {
  std::vector<Code> p(n);
  std::iota(p.begin(), p.end(), Code{0});
  std::vector<IsoGraph> out;
  do {
    IsoGraph g;
    for (Code x = 0; x < n; ++x) g.emplace(x, p[x]);
    out.push_back(std::move(g));
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

StructurePresentation total_structure(const RelationalLanguage& language, Code n,
                                      const std::vector<Atom>& true_atoms) {
  StructurePresentation s(language, n, true);
  const std::set<Atom> yes(true_atoms.begin(), true_atoms.end());
  for (const Atom& a : all_atoms(language, n)) {
    if (yes.contains(a))
      s.add_fact(a);
    else
      s.add_negative_fact(a);
  }
  return s;
}

std::vector<StructurePresentation> total_structures(const RelationalLanguage& language, Code n,
                                                    std::size_t exhaustive_atoms,
                                                    std::size_t samples, Rng& rng) {
  const std::vector<Atom> atoms = all_atoms(language, n);
  std::vector<StructurePresentation> out;
  auto build = [&](const std::vector<bool>& bits) {
    std::vector<Atom> yes;
    for (std::size_t i = 0; i < atoms.size(); ++i)
      if (bits[i]) yes.push_back(atoms[i]);
    out.push_back(total_structure(language, n, yes));
  };

  const bool exhaustive =
      atoms.size() <= exhaustive_atoms || (atoms.size() < 20 && (1ull << atoms.size()) <= samples);
  if (exhaustive) {
    const std::uint64_t count = 1ull << atoms.size();
    std::vector<bool> bits(atoms.size());
    for (std::uint64_t m = 0; m < count; ++m) {
      for (std::size_t i = 0; i < atoms.size(); ++i) bits[i] = (m >> i) & 1;
      build(bits);
    }
    return out;
  }
  std::set<std::vector<bool>> seen;
  std::size_t attempts = 0;
  while (seen.size() < samples && attempts < 64 * samples) {
    ++attempts;
    std::vector<bool> bits(atoms.size());
    for (std::size_t i = 0; i < atoms.size(); ++i) bits[i] = rng.coin();
    if (seen.insert(bits).second) build(bits);
  }
  return out;
}

namespace {

std::optional<Atom> try_decode(Code c, const RelationalLanguage& language) {
  try {
    Literal lit = decode_atom(c, language, DiagramFormat::atomic);
    return lit.atom();
  } catch (const DecodeError&) {
    return std::nullopt;
  }
}

Code need_atom(Code c, const RelationalLanguage& language) {
  auto a = try_decode(c, language);
  if (!a || a->args.empty()) return 0;
  return *std::max_element(a->args.begin(), a->args.end()) + 1;
}

Code need_join(Code z, const RelationalLanguage& lang_a, const RelationalLanguage& lang_b) {
  switch (z % 3) {
    case 0: return need_atom(z / 3, lang_a);
    case 2: return need_atom(z / 3, lang_b);
    default: {
      auto [u, w] = cantor_unpair(z / 3);
      return std::max(u, w) + 1;
    }
  }
}

}  // namespace

Code required_universe_diagram(const TuringFunctional& phi, const RelationalLanguage& language) {
  Code n = 0;
  for (const auto& ax : phi.axioms())
    for (const auto& [z, v] : ax.queries) n = std::max(n, need_atom(z, language));
  return n;
}

Code required_universe_diagram(const EnumOperator& psi, const RelationalLanguage& language) {
  Code n = 0;
  for (const auto& ax : psi.axioms())
    for (Code z : ax.premise) n = std::max(n, need_atom(z, language));
  return n;
}

Code required_universe_join(const TuringFunctional& phi, const RelationalLanguage& lang_a,
                            const RelationalLanguage& lang_b) {
  Code n = 0;
  for (const auto& ax : phi.axioms())
    for (const auto& [z, v] : ax.queries) n = std::max(n, need_join(z, lang_a, lang_b));
  return n;
}

Code required_universe_join(const EnumOperator& psi, const RelationalLanguage& lang_a,
                            const RelationalLanguage& lang_b) {
  Code n = 0;
  for (const auto& ax : psi.axioms())
    for (Code z : ax.premise) n = std::max(n, need_join(z, lang_a, lang_b));
  return n;
}

void SweepStats::merge(const SweepStats& other, std::size_t keep) {
  structures += other.structures;
  oracles += other.oracles;
  comparisons += other.comparisons;
  skipped += other.skipped;
  mismatch_count += other.mismatch_count;
  for (const auto& m : other.mismatches)
    if (mismatches.size() < keep) mismatches.push_back(m);
}

namespace {

// Outcome of one functional run, rendered for comparison and reporting.
std::string run_outcome(const TuringFunctional& phi, const TotalOracle& oracle, Code x,
                        Stage stage) {
  try {
    auto v = apply_turing_functional(phi, oracle, x, stage);
    return v ? std::to_string(*v) : "divergent";
  } catch (const Error& e) {
    return std::string("error: ") + e.what();
  }
}

TotalOracle total_oracle(const CodeSet& ones, const SweepSettings& settings) {
  return TotalOracle::covering(ones, settings.oracle_window);
}

void record(SweepStats& stats, const SweepSettings& settings, const CodeSet& oracle, Code x,
            std::string expected, std::string actual) {
  ++stats.mismatch_count;
  if (stats.mismatches.size() < settings.keep)
    stats.mismatches.push_back(SweepMismatch{std::vector<Code>(oracle.begin(), oracle.end()), x,
                                             std::move(expected), std::move(actual)});
}

std::string describe_outputs(const CodeSet& ys) {
  if (ys.empty()) return "divergent";
  std::string out;
  for (Code y : ys) out += (out.empty() ? "" : "|") + std::to_string(y);
  return out;
}

}  // namespace

SweepStats compare_star(const TuringFunctional& phi, const EnumOperator& psi,
                        const std::vector<StructurePresentation>& sources,
                        const SweepSettings& settings, Code min_universe) {
  SweepStats stats;
  for (const auto& a : sources) {
    if (a.universe() < min_universe) {
      ++stats.skipped;
      continue;
    }
    ++stats.structures;
    const CodeSet da = atomic_diagram(a, settings.stage);
    for (const IsoGraph& pi : all_permutations(a.universe())) {
      const StructurePresentation b = transport(a, pi);
      const CodeSet oracle = join3(da, graph_codes(pi), atomic_diagram(b, settings.stage));
      const TotalOracle total = total_oracle(oracle, settings);
      ++stats.oracles;
      std::map<Code, CodeSet> emitted;
      for (Code c : apply_enum_operator(psi, oracle, settings.stage)) {
        auto [x, y] = cantor_unpair(c);
        if (x < settings.input_bound) emitted[x].insert(y);
      }
      for (Code x = 0; x < settings.input_bound; ++x) {
        ++stats.comparisons;
        const std::string expected = run_outcome(phi, total, x, settings.stage);
        auto it = emitted.find(x);
        const std::string actual = describe_outputs(it == emitted.end() ? CodeSet{} : it->second);
        if (expected != actual) record(stats, settings, oracle, x, expected, actual);
      }
    }
  }
  return stats;
}

SweepStats compare_diagram(const TuringFunctional& phi, const EnumOperator& psi,
                           const std::vector<StructurePresentation>& sources,
                           const SweepSettings& settings, Code min_universe) {
  SweepStats stats;
  for (const auto& a : sources) {
    if (a.universe() < min_universe) {
      ++stats.skipped;
      continue;
    }
    ++stats.structures;
    ++stats.oracles;
    const CodeSet oracle = atomic_diagram(a, settings.stage);
    const TotalOracle total = total_oracle(oracle, settings);
    const CodeSet emitted = apply_enum_operator(psi, oracle, settings.stage);
    for (Code x = 0; x < settings.input_bound; ++x) {
      ++stats.comparisons;
      const std::string outcome = run_outcome(phi, total, x, settings.stage);
      const bool in_phi = outcome == "1";
      const bool in_psi = emitted.contains(x);
      if (outcome.starts_with("error") || in_phi != in_psi)
        record(stats, settings, oracle, x, outcome == "1" ? "member" : "non-member (" + outcome + ")",
               in_psi ? "member" : "non-member");
    }
  }
  return stats;
}

SweepStats compare_turing(const TuringFunctional& a, const TuringFunctional& b,
                          const std::vector<StructurePresentation>& sources,
                          const SweepSettings& settings, Code min_universe) {
  SweepStats stats;
  for (const auto& s : sources) {
    if (s.universe() < min_universe) {
      ++stats.skipped;
      continue;
    }
    ++stats.structures;
    ++stats.oracles;
    const CodeSet oracle = atomic_diagram(s, settings.stage);
    const TotalOracle total = total_oracle(oracle, settings);
    for (Code x = 0; x < settings.input_bound; ++x) {
      ++stats.comparisons;
      const std::string lhs = run_outcome(a, total, x, settings.stage);
      const std::string rhs = run_outcome(b, total, x, settings.stage);
      if (lhs != rhs || lhs.starts_with("error")) record(stats, settings, oracle, x, lhs, rhs);
    }
  }
  return stats;
}

}  // namespace efunc
