#pragma once

// Exhaustive equivalence sweeps: a source operator and its transform are run
// on the same diagram oracles and compared input by input.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "efunc/diagrams.hpp"
#include "efunc/machines.hpp"
#include "efunc/random.hpp"

namespace efunc {

/// All n! bijections of [0, n), in lexicographic order.
std::vector<IsoGraph> all_permutations(Code n);

/// Total structures over the language on [0, n): every one of them when the
/// atom count is at most `exhaustive_atoms`, otherwise `samples` seeded draws
/// (distinct, in draw order).
std::vector<StructurePresentation> total_structures(const RelationalLanguage& language, Code n,
                                                    std::size_t exhaustive_atoms,
                                                    std::size_t samples, Rng& rng);

/// Total structure whose facts are exactly `true_atoms`.
StructurePresentation total_structure(const RelationalLanguage& language, Code n,
                                      const std::vector<Atom>& true_atoms);

/// Least universe size that contains every element named by a query or
/// premise code (codes that are not atoms of the language are ignored).
Code required_universe_diagram(const TuringFunctional& phi, const RelationalLanguage& language);
Code required_universe_diagram(const EnumOperator& psi, const RelationalLanguage& language);
Code required_universe_join(const TuringFunctional& phi, const RelationalLanguage& lang_a,
                            const RelationalLanguage& lang_b);
Code required_universe_join(const EnumOperator& psi, const RelationalLanguage& lang_a,
                            const RelationalLanguage& lang_b);

struct SweepSettings {
  Code input_bound = 64;
  Code oracle_window = 1024;  // total-oracle window; widened to cover the oracle
  Stage stage = std::numeric_limits<Stage>::max();
  std::size_t keep = 5;  // mismatches retained as witnesses
};

struct SweepMismatch {
  std::vector<Code> oracle;  // the oracle's elements
  Code input = 0;
  std::string expected;
  std::string actual;
};

struct SweepStats {
  std::size_t structures = 0;
  std::size_t oracles = 0;
  std::size_t comparisons = 0;
  std::size_t skipped = 0;  // structures too small for the operator
  std::size_t mismatch_count = 0;
  std::vector<SweepMismatch> mismatches;

  bool ok() const noexcept { return mismatch_count == 0; }
  void merge(const SweepStats& other, std::size_t keep);
};

/// Morphism parts: for every structure A, every permutation pi of its universe
/// and B = transport(A, pi), compares phi(x) with {y : pair(x,y) in psi} on
/// D(A) (+) Graph(pi) (+) D(B).
SweepStats compare_star(const TuringFunctional& phi, const EnumOperator& psi,
                        const std::vector<StructurePresentation>& sources,
                        const SweepSettings& settings, Code min_universe = 0);

/// Object parts: for every structure A, {x : phi(x) = 1} against psi(D(A)).
SweepStats compare_diagram(const TuringFunctional& phi, const EnumOperator& psi,
                           const std::vector<StructurePresentation>& sources,
                           const SweepSettings& settings, Code min_universe = 0);

/// Two functionals on D(A), input by input.
SweepStats compare_turing(const TuringFunctional& a, const TuringFunctional& b,
                          const std::vector<StructurePresentation>& sources,
                          const SweepSettings& settings, Code min_universe = 0);

}  // namespace efunc
