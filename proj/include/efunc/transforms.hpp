#pragma once

// Conversions between the operator species:
//
//   turing_to_enum_diagram   computable object part  -> enumeration operator
//   star_to_enum             Turing morphism part    -> enumeration operator
//   enum_to_star             enumeration operator    -> Turing morphism part
//   enum_to_turing_diagram   enumeration object part -> computable (dual search)
//
// All generation is bounded by an explicit code bound and listed in a fixed
// lexicographic order, so the produced listings are reproducible.

#include <optional>
#include <vector>

#include "efunc/diagrams.hpp"
#include "efunc/machines.hpp"

namespace efunc {

/// The partial string built from a finite atomic diagram p: 1 on p, 0 on the
/// duals of p, undefined elsewhere on [0, m] where m is the largest such code.
struct AlphaString {
  CodeSet source;
  std::vector<std::optional<bool>> values;
  std::vector<bool> totalized;  // undefined read as 0

  Code size() const noexcept { return values.size(); }
  /// nullopt when undefined or beyond the window.
  std::optional<bool> at(Code x) const {
    return x < values.size() ? values[x] : std::nullopt;
  }
};

/// Throws InconsistentDiagram if p holds an atom and its dual, DecodeError if
/// a code names a relation outside the language.
AlphaString alpha_string(const CodeSet& p, const RelationalLanguage& language);

/// The least diagram fragment that answers q: the 1-positions together with
/// the duals of the 0-positions. nullopt when that fragment holds a dual pair.
std::optional<CodeSet> diagram_premise(const QueryMap& q);

/// Emits (p, x) for every axiom (q, x, 1) of phi, with p the least consistent
/// diagram whose alpha string defines and agrees with q. Every larger
/// consistent p gives the same operator extensionally and is not listed.
/// Axioms mentioning codes >= code_bound are dropped.
EnumOperator turing_to_enum_diagram(const TuringFunctional& phi, const RelationalLanguage& language,
                                    Code code_bound);

/// How "z outside the range of the graph queries" is read.
enum class RangeReading {
  one_entries,    // z differs from every v with a 1-answer on (u', v)
  all_mentioned,  // z differs from every v queried on (u', v), whatever the answer
};

/// Reads phi_star as a functional on D(A) (+) Graph(f) (+) D(B) and lists
/// (B (+) Graph(tau) (+) C, pair(x, y)) for every axiom (q, x, y). Throws
/// FormatError for positive shapes and MalformedFunctional when a diagram
/// column query is not an atom of its language.
EnumOperator star_to_enum(const TuringFunctional& phi_star, const RelationalLanguage& lang_a,
                          const RelationalLanguage& lang_b, Code code_bound,
                          RangeReading reading = RangeReading::one_entries);

/// Each axiom (D, pair(x, y)) listed by stage_budget becomes (D all 1, x, y).
TuringFunctional enum_to_star(const EnumOperator& psi_star, Stage stage_budget,
                              DiagramFormat format = DiagramFormat::atomic);

/// Each axiom (D, c) becomes (D all 1, c, 1) and (D all 1, dual c, 0): the
/// functional answers once c or its dual has been enumerated. Throws
/// DecodeError if a conclusion is not an atom of the language.
TuringFunctional enum_to_turing_diagram(const EnumOperator& psi, const RelationalLanguage& language,
                                        Stage stage_budget);

enum class Decision { yes, no, insufficient_budget };

/// Membership of x in psi(oracle) decided by waiting for x or dual(x).
Decision decide_atom(const EnumOperator& psi, const CodeSet& oracle, Code x, Stage stage_budget);

}  // namespace efunc
