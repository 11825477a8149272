#pragma once

// Enumeration operators and Turing functionals over coded oracles.
//
// Both species are stage-indexed listings: an axiom listed at stage s is
// available from stage s onward. Divergence means that no available axiom
// fired within the stage budget.

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "efunc/coding.hpp"

namespace efunc {

// ---------------------------------------------------------------------------
// Enumeration operators

struct EnumAxiom {
  CodeSet premise;
  Code conclusion = 0;
  Stage stage = 0;

  friend bool operator==(const EnumAxiom&, const EnumAxiom&) = default;
};

class EnumOperator {
 public:
  EnumOperator() = default;
  /// Axioms are stably ordered by listing stage.
  explicit EnumOperator(std::vector<EnumAxiom> axioms);

  const std::vector<EnumAxiom>& axioms() const noexcept { return axioms_; }
  /// Prefix of the listing available at `stage`.
  std::span<const EnumAxiom> available(Stage stage) const;
  std::size_t size() const noexcept { return axioms_.size(); }
  bool empty() const noexcept { return axioms_.empty(); }
  Stage last_stage() const noexcept;

 private:
  std::vector<EnumAxiom> axioms_;
};

/// Enumeration-form oracle: every element carries the stage it enters at.
class EnumOracle {
 public:
  EnumOracle() = default;
  static EnumOracle fixed(const CodeSet& elements, Stage stage = 0);

  /// Keeps the earliest stage when an element is added twice.
  void add(Code c, Stage stage);
  bool contains(Code c, Stage stage) const;
  CodeSet at(Stage stage) const;
  Stage last_stage() const noexcept;
  const std::map<Code, Stage>& entries() const noexcept { return entries_; }

 private:
  std::map<Code, Stage> entries_;
};

CodeSet apply_enum_operator(const EnumOperator& op, const EnumOracle& oracle, Stage stage);
CodeSet apply_enum_operator(const EnumOperator& op, const CodeSet& snapshot, Stage stage);

/// First available axiom (in listing order) concluding `c` whose premise is
/// contained in `snapshot`.
std::optional<EnumAxiom> find_witness(const EnumOperator& op, const CodeSet& snapshot,
                                      Stage stage, Code c);

// ---------------------------------------------------------------------------
// Turing functionals

/// Total-form oracle: a 0/1 assignment on the window [0, window).
class TotalOracle {
 public:
  TotalOracle() = default;
  /// Elements of `ones` at or beyond `window` are dropped.
  TotalOracle(const CodeSet& ones, Code window);
  /// Window is max(ones)+1, or `min_window` if larger.
  static TotalOracle covering(const CodeSet& ones, Code min_window = 0);

  /// nullopt outside the window.
  std::optional<bool> bit(Code c) const;
  Code window() const noexcept { return window_; }
  const CodeSet& ones() const noexcept { return ones_; }

 private:
  CodeSet ones_;
  Code window_ = 0;
};

using QueryMap = std::map<Code, bool>;

struct QueryAxiom {
  QueryMap queries;
  Code input = 0;
  Code output = 0;
  Stage stage = 0;

  friend bool operator==(const QueryAxiom&, const QueryAxiom&) = default;
};

/// The class of oracles a functional is meant to read. Two query maps are
/// compatible when they agree on shared positions and their union can occur
/// in some oracle of the shape.
enum class OracleShape {
  plain,             // arbitrary 0/1 assignments
  atomic_diagram,    // D(A): exactly one of each dual pair
  positive_diagram,  // P(A): equality and inequality columns are fixed by the codes
  atomic_join,       // D(A) (+) Graph(f) (+) D(B)
  positive_join,     // P(A) (+) Graph(f) (+) P(B)
};

std::string to_string(OracleShape shape);
std::optional<OracleShape> shape_from_string(const std::string& name);

bool realizable(const QueryMap& q, OracleShape shape);
bool compatible(const QueryMap& a, const QueryMap& b, OracleShape shape);

struct Inconsistency {
  std::size_t first = 0;
  std::size_t second = 0;
};

class TuringFunctional {
 public:
  TuringFunctional() = default;
  explicit TuringFunctional(std::vector<QueryAxiom> axioms,
                            OracleShape shape = OracleShape::plain);

  const std::vector<QueryAxiom>& axioms() const noexcept { return axioms_; }
  OracleShape shape() const noexcept { return shape_; }
  std::size_t size() const noexcept { return axioms_.size(); }
  Stage last_stage() const noexcept;
  /// Indices of the axioms with the given input, in listing order.
  std::span<const std::size_t> axioms_for(Code input) const;

  /// Pairwise scan: two axioms with equal input, different outputs and
  /// compatible query maps.
  std::optional<Inconsistency> find_inconsistency() const;
  /// Throws FunctionalInconsistency naming the offending pair.
  void validate() const;

 private:
  std::vector<QueryAxiom> axioms_;
  OracleShape shape_ = OracleShape::plain;
  std::map<Code, std::vector<std::size_t>> by_input_;
};

struct Computation {
  std::optional<Code> value;  // nullopt = divergent within the stage
  QueryMap use;               // queries of the fired axiom
};

/// Throws FunctionalInconsistency when fired axioms disagree and
/// InsufficientOracle when a candidate axiom queries outside the window.
Computation run_turing_functional(const TuringFunctional& phi, const TotalOracle& oracle,
                                  Code input, Stage stage);
std::optional<Code> apply_turing_functional(const TuringFunctional& phi,
                                            const TotalOracle& oracle, Code input, Stage stage);

// ---------------------------------------------------------------------------
// Procedural species. Used where the axiom listing is infinite even on a
// finite window (premises range over all copies of a structure).

/// Read access to a total oracle that records every query.
class OracleView {
 public:
  explicit OracleView(const TotalOracle& oracle) : oracle_(&oracle) {}
  /// Throws InsufficientOracle outside the window.
  bool query(Code c);
  const QueryMap& use() const noexcept { return use_; }
  Code window() const noexcept { return oracle_->window(); }

 private:
  const TotalOracle* oracle_;
  QueryMap use_;
};

struct OracleProgram {
  std::string name;
  std::function<std::optional<Code>(OracleView&, Code input, Stage stage)> run;
};

/// An enumeration operator given by its action on finite oracle snapshots.
/// `witness` returns a finite premise inside the snapshot that yields the
/// output on its own.
struct StreamOperator {
  std::string name;
  std::function<CodeSet(const CodeSet& snapshot, Stage stage)> apply;
  std::function<std::optional<CodeSet>(const CodeSet& snapshot, Stage stage, Code c)> witness;
};

// ---------------------------------------------------------------------------
// Legitimacy checks for enumeration operators. Each returns the list of
// violations found (empty = pass).

/// Listing is ordered by stage and every premise is finite.
std::vector<std::string> check_listing(const EnumOperator& op);

/// For X subset of Y and s <= t: Op(X,s) within Op(X,t) and within Op(Y,s);
/// every output of Op(X,s) has a witness axiom whose premise alone
/// reproduces it.
std::vector<std::string> check_monotone_compact(const EnumOperator& op, const CodeSet& x,
                                                const CodeSet& y, Stage s, Stage t);

}  // namespace efunc
