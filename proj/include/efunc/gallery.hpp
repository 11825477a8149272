#pragma once

// Example structures and functors, all driven by a CESchedule standing in for
// the halting set.
//
//   successor structures   (w, 0, s, K), (w, 0, s, not K), (w, 0, s)
//   flip                   computable; swaps K and its complement
//   drop_K / add_K         positive enumerable pseudo-inverse pair
//   cycle graph            loop vertex a plus cycles of length n+3
//   B1 / B2                rigid ray-with-gadgets copies
//   parity                 positive star-enumerable; picks B1 or B2 from the
//                          cycle through 0

#include <limits>
#include <optional>

#include "efunc/diagrams.hpp"
#include "efunc/functors.hpp"

namespace efunc {

inline constexpr Stage kAllStages = std::numeric_limits<Stage>::max();

// ---------------------------------------------------------------------------
// Successor structures. Relations: 0 = Zero (unary), 1 = S (binary),
// 2 = K (unary, absent in the plain flavour).

enum class SuccessorFlavor { with_k, with_k_bar, plain };

RelationalLanguage successor_language(bool with_k);

/// Universe [0, window). Zero and S (and their negations) enter at stage 0.
/// For with_k, K(x) enters at x's schedule stage and not K(x) at the final
/// schedule stage; with_k_bar mirrors that. Entries after `stage` are cut.
StructurePresentation build_successor(SuccessorFlavor flavor, const CESchedule& schedule,
                                      Code window, Stage stage = kAllStages);

/// (x, 0..y-1 -> 0, y -> 1) on the middle column: outputs f(x) for x, y < window.
TuringFunctional identity_morphism_functional(Code window, DiagramFormat format);
/// Graph(f) column copied to the output: ({pair(x,y) in column 1}, pair(x,y)).
EnumOperator identity_morphism_operator(Code window);

/// Lambda^A = id: Turing (empty query, x, x) or enumeration ({x = x}, pair(x,x)).
IsoWitness identity_witness_turing(Code window, DiagramFormat format);
IsoWitness identity_witness_enum(Code window);

/// Computable functor on the with-K language exchanging K and not K on [0, window).
EffectivizedFunctor functor_flip(Code window);
/// Positive enumerable: forgets the K column on [0, window).
EffectivizedFunctor functor_drop_K(Code window);
/// Positive enumerable: copies the diagram and adds K(x_k) once a chain
/// Zero(x_0), S(x_0,x_1), ..., S(x_{k-1},x_k) is seen, listed at k's stage.
EffectivizedFunctor functor_add_K(const CESchedule& schedule, Code window);

// ---------------------------------------------------------------------------
// Cycle graph. Language [2], E symmetric. Vertex 0 is a (with a loop); cycle
// n has n+3 vertices starting at cycle_start(n). The edge between a and the
// first vertex of cycle n enters at n's schedule stage.

Code cycle_start(Code n);
Code cycle_graph_universe(Code window);

/// `zero_on_cycle` swaps 0 with the first vertex of that cycle.
StructurePresentation build_cycle_graph(const CESchedule& schedule, Code window,
                                        Stage stage = kAllStages,
                                        std::optional<Code> zero_on_cycle = std::nullopt);

/// The transposition used by `zero_on_cycle` (identity when nullopt).
IsoGraph cycle_relocation(Code window, std::optional<Code> zero_on_cycle);

// ---------------------------------------------------------------------------
// Categoricity graphs. Gadget i uses v_i = 4i, a_i = 4i+1, b_i = 4i+2,
// s_i = 4i+3 with edges v_i-v_{i+1}, v_i-a_i, v_i-b_i, a_i-s_i and a loop at
// v_0. A scheduled gadget owns two extra vertices e0, e1 numbered after the
// gadgets in (stage, element) order; on entry B1 gets b_i-e0-e1 and B2 gets
// s_i-e0 and b_i-e1.

enum class GadgetCopy { B1, B2 };

std::string to_string(GadgetCopy copy);

struct Gadget {
  Code v, a, b, s;
  std::optional<Code> e0, e1;
  std::optional<Stage> entry;
};

Code categoricity_universe(const CESchedule& schedule, Code window);
Gadget gadget(const CESchedule& schedule, Code window, Code i);

StructurePresentation build_categoricity_graph(GadgetCopy copy, const CESchedule& schedule,
                                               Code window, Stage stage = kAllStages);

/// The isomorphism B1 -> B2 with the schedule read as a finite set: straight
/// on unscheduled gadgets, crossed on scheduled ones. Throws BoundsError for
/// an empty window.
IsoGraph unique_isomorphism_B1_B2(const CESchedule& schedule, Code window);

// ---------------------------------------------------------------------------
// Parity functor.

/// Which copies the edges around 0 call for: a loop at 0 or an even simple
/// cycle through 0 selects B1, an odd one B2. `premise` holds the edge codes
/// (positive-diagram relation codes) that witness each choice.
struct ParityEvidence {
  bool b1 = false;
  bool b2 = false;
  CodeSet premise_b1;
  CodeSet premise_b2;
};

ParityEvidence parity_evidence(const CodeSet& positive_diagram);

/// Object part reads P(A) for A a copy of the cycle graph; the output is
/// P(B1) or P(B2) on `gadget_window` gadgets. The morphism part computes the
/// unique isomorphism between the chosen copies.
EffectivizedFunctor functor_parity(const CESchedule& schedule, Code gadget_window);

// ---------------------------------------------------------------------------

/// X within Y, both P(A^) (+) Graph(f) (+) P(A~) with 0 on a 4-cycle in A^
/// and on a 3-cycle in A~. At X the schedule lacks `gadget`, so the correct
/// F(f) maps a_i straight; at Y it has it and the map is crossed.
struct MonotonicityWitness {
  Code gadget = 0;
  Stage entry_stage = 0;
  CodeSet x_oracle;
  CodeSet y_oracle;
  Code element = 0;
  Code required_at_x = 0;
  Code required_at_y = 0;
  bool verified = false;
};

/// Throws SearchExhausted when no scheduled gadget lies in the window and
/// BoundsError when the window has fewer than two cycles.
MonotonicityWitness find_monotonicity_violation(const CESchedule& schedule, Code window);

}  // namespace efunc
