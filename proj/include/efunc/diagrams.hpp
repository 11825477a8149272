#pragma once

// Relational structures on a finite window of omega, their atomic and
// positive diagrams, enumeration pullbacks and the quotient/spread
// operations on pullbacks.
//
// Codings:
//   atom R_i(u)         -> pair(i, tuple(u))
//   atomic diagram      -> 2*atom for R_i(u), 2*atom+1 for not R_i(u)
//   positive diagram    -> 3*pair(x,y) for x=y, 3*pair(x,y)+1 for x!=y,
//                          3*atom+2 for R_i(u)

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "efunc/coding.hpp"

namespace efunc {

struct RelationalLanguage {
  std::vector<std::size_t> arities;

  std::size_t size() const noexcept { return arities.size(); }
  std::size_t arity(std::size_t i) const { return arities.at(i); }
  /// Throws CodingError on a zero arity.
  void validate() const;

  friend bool operator==(const RelationalLanguage&, const RelationalLanguage&) = default;
};

struct Atom {
  std::size_t relation = 0;
  std::vector<Code> args;

  friend auto operator<=>(const Atom&, const Atom&) = default;
  friend bool operator==(const Atom&, const Atom&) = default;
};

std::string to_string(const Atom& atom);

/// Stage-indexed presentation. Facts (and, for total presentations, negative
/// facts) record the stage at which they enter; both are monotone in stage.
class StructurePresentation {
 public:
  StructurePresentation() = default;
  StructurePresentation(RelationalLanguage language, Code universe, bool total = false);

  const RelationalLanguage& language() const noexcept { return language_; }
  Code universe() const noexcept { return universe_; }
  bool total() const noexcept { return total_; }
  void set_total(bool total) noexcept { total_ = total; }

  /// Throws BoundsError if the atom does not fit the language or window.
  /// Adding an existing fact keeps the earlier stage.
  void add_fact(const Atom& atom, Stage stage = 0);
  void add_negative_fact(const Atom& atom, Stage stage = 0);

  const std::map<Atom, Stage>& facts() const noexcept { return facts_; }
  const std::map<Atom, Stage>& negative_facts() const noexcept { return negative_facts_; }

  bool holds(const Atom& atom, Stage stage) const;
  bool fails(const Atom& atom, Stage stage) const;
  std::vector<Atom> facts_at(Stage stage) const;
  Stage final_stage() const noexcept;

  /// Throws TotalityError unless declared total and, at the final stage,
  /// every in-window atom is exactly one of fact / negative fact.
  void check_total() const;

  /// Snapshot with every entry of stage <= `stage` moved to stage 0.
  StructurePresentation at(Stage stage) const;

  /// Same language, universe and fact sets at `stage` (stages ignored).
  bool same_at(const StructurePresentation& other, Stage stage) const;

 private:
  void check_atom(const Atom& atom) const;

  RelationalLanguage language_;
  Code universe_ = 0;
  bool total_ = false;
  std::map<Atom, Stage> facts_;
  std::map<Atom, Stage> negative_facts_;
};

/// Every tuple of the given arity over [0, universe), in lexicographic order.
std::vector<std::vector<Code>> all_tuples(Code universe, std::size_t arity);
/// Every atom of the language over [0, universe).
std::vector<Atom> all_atoms(const RelationalLanguage& language, Code universe);

// ---------------------------------------------------------------------------
// Codecs

enum class DiagramFormat { atomic, positive };

std::string to_string(DiagramFormat format);

Code atom_code(const RelationalLanguage& language, const Atom& atom);
Code atomic_code(const RelationalLanguage& language, const Atom& atom, bool negated);
Code positive_eq_code(Code x, Code y);
Code positive_neq_code(Code x, Code y);
Code positive_rel_code(const RelationalLanguage& language, const Atom& atom);

struct Literal {
  enum class Kind { relation, negated_relation, equal, not_equal };
  Kind kind = Kind::relation;
  std::size_t relation = 0;  // relation index; unused for equal / not_equal
  std::vector<Code> args;

  Atom atom() const { return Atom{relation, args}; }
  std::string to_string() const;
  friend bool operator==(const Literal&, const Literal&) = default;
};

/// Throws DecodeError when the relation index is outside the language.
Literal decode_atom(Code c, const RelationalLanguage& language, DiagramFormat format);
Code encode_literal(const Literal& lit, const RelationalLanguage& language, DiagramFormat format);

/// Requires a total presentation (TotalityError otherwise).
CodeSet atomic_diagram(const StructurePresentation& s, Stage stage);
/// Equality and inequality range over the whole universe window.
CodeSet positive_diagram(const StructurePresentation& s, Stage stage);
CodeSet diagram(const StructurePresentation& s, Stage stage, DiagramFormat format);

// ---------------------------------------------------------------------------
// Enumerations, isomorphism graphs and pullbacks

/// f : [0, N) -> omega.
struct Enumeration {
  std::vector<Code> values;
  bool partial = false;  // some element of the target window has no preimage

  static Enumeration identity(Code n);
  Code size() const noexcept { return values.size(); }
  Code operator()(Code x) const { return values.at(x); }
  /// True if every element of [0, target) has a preimage.
  bool covers(Code target) const;
  friend bool operator==(const Enumeration&, const Enumeration&) = default;
};

/// Finite graph of a (partial) map on elements.
using IsoGraph = std::map<Code, Code>;

IsoGraph identity_graph(Code n);
/// (g . f)(x) = g(f(x)) on the x where both are defined.
IsoGraph compose(const IsoGraph& g, const IsoGraph& f);
/// Throws CompositionError if `f` is not injective.
IsoGraph inverse(const IsoGraph& f);
bool is_partial_injection(const IsoGraph& f);
/// Total on [0, n), injective, with image inside [0, n).
bool is_bijection_on(const IsoGraph& f, Code n);
CodeSet graph_codes(const IsoGraph& f);

/// Renames the structure along a bijection of its universe window:
/// R(u) holds in the result iff R(pi^-1(u)) holds in `s`.
StructurePresentation transport(const StructurePresentation& s, const IsoGraph& pi);

/// f^{-1}(=) (+) f^{-1}(!=) (+) f^{-1}(R_i) with R_i read at `stage`.
CodeSet pullback(const Enumeration& f, const StructurePresentation& s, Stage stage);

/// Equivalence classes of the =-column of a pullback on [0, window), indexed
/// by least element.
struct EqualityClasses {
  std::vector<std::size_t> class_of;            // element -> class index
  std::vector<std::vector<Code>> members;       // class index -> sorted members

  std::size_t size() const noexcept { return members.size(); }
  Enumeration as_enumeration() const;
};

/// Throws MalformedPullback if the =-column is not an equivalence relation
/// on the window.
EqualityClasses equality_classes(const CodeSet& pb, Code window);

/// The pullback as a structure on class indices. Throws MalformedPullback on
/// relation atoms that mention elements outside the window.
StructurePresentation quotient_by_equality(const CodeSet& pb, Code window,
                                           const RelationalLanguage& language);

/// Re-expands the relation column of `p_target` (a positive diagram on class
/// indices) over the class members of `pb_source`. Returns the bare relation
/// column, i.e. the inner codes pair(i, tuple). Throws InsufficientClasses.
CodeSet spread_relations(const CodeSet& p_target, const CodeSet& pb_source, Code window,
                         const RelationalLanguage& language);

/// x -> i(f(x)). Throws CompositionError if i is not injective or misses some f(x).
Enumeration compose_enumeration(const Enumeration& f, const IsoGraph& i);

// ---------------------------------------------------------------------------

/// Finite list of (element, stage) entries standing in for a c.e. set.
class CESchedule {
 public:
  CESchedule() = default;
  /// Throws BoundsError on a repeated element.
  explicit CESchedule(std::vector<std::pair<Code, Stage>> entries);

  const std::vector<std::pair<Code, Stage>>& entries() const noexcept { return entries_; }
  bool empty() const noexcept { return entries_.empty(); }
  std::size_t size() const noexcept { return entries_.size(); }

  std::optional<Stage> stage_of(Code element) const;
  /// Enumerated by `stage`.
  bool contains(Code element, Stage stage) const;
  /// Enumerated at all (the schedule read as a finite set).
  bool contains(Code element) const { return stage_of(element).has_value(); }
  Stage final_stage() const noexcept;
  /// Entries ordered by (stage, element).
  std::vector<std::pair<Code, Stage>> by_stage() const;

 private:
  std::vector<std::pair<Code, Stage>> entries_;
};

}  // namespace efunc
