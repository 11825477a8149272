#pragma once

// Effectivized functors: an object part acting on diagrams and a morphism
// part acting on D(A) (+) Graph(f) (+) D(B) (or the positive analogue), with
// checkers for functor laws, isomorphism of functors and pseudo-inverses on
// finite windows.

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "efunc/diagrams.hpp"
#include "efunc/machines.hpp"

namespace efunc {

enum class FunctorKind {
  computable,
  enumerable,
  star_enumerable,
  positive_enumerable,
  positive_star_enumerable,
};

std::string to_string(FunctorKind kind);
std::optional<FunctorKind> kind_from_string(const std::string& name);
DiagramFormat format_of(FunctorKind kind);

/// Explicit listings or procedural operators of either species.
using OperatorPart = std::variant<EnumOperator, TuringFunctional, StreamOperator, OracleProgram>;

bool is_enumeration_species(const OperatorPart& part) noexcept;
std::string species_name(const OperatorPart& part);

class EffectivizedFunctor {
 public:
  using UniverseMap = std::function<Code(Code)>;

  /// Throws KindError when a part's species does not match the kind.
  EffectivizedFunctor(std::string name, FunctorKind kind, RelationalLanguage from,
                      RelationalLanguage to, OperatorPart object, OperatorPart morphism,
                      UniverseMap out_universe = {});

  const std::string& name() const noexcept { return name_; }
  FunctorKind kind() const noexcept { return kind_; }
  DiagramFormat format() const noexcept { return format_of(kind_); }
  const RelationalLanguage& from() const noexcept { return from_; }
  const RelationalLanguage& to() const noexcept { return to_; }
  const OperatorPart& object() const noexcept { return object_; }
  const OperatorPart& morphism() const noexcept { return morphism_; }
  /// Universe window of F(A) for a source window of size n.
  Code out_universe(Code n) const { return out_universe_ ? out_universe_(n) : n; }

  /// Copy with the morphism part replaced (negative controls).
  EffectivizedFunctor with_morphism(OperatorPart morphism) const;

 private:
  std::string name_;
  FunctorKind kind_;
  RelationalLanguage from_;
  RelationalLanguage to_;
  OperatorPart object_;
  OperatorPart morphism_;
  UniverseMap out_universe_;
};

/// Smallest total-oracle window covering every diagram code of a structure
/// on [0, n) (and, for joins, every graph code).
Code diagram_window(const RelationalLanguage& language, Code n, DiagramFormat format);
Code join_window(const RelationalLanguage& a, const RelationalLanguage& b, Code n,
                 DiagramFormat format);

/// Runs the object part on the encoded diagram and decodes the result. Throws
/// IllFormedFunctor when the output is not a diagram in the declared format.
StructurePresentation apply_object(const EffectivizedFunctor& f, const StructurePresentation& s,
                                   Stage stage);

/// Decoded graph of F(f) on the window of F(A). Throws IllFormedFunctor when
/// the output is not a partial injection.
IsoGraph apply_morphism(const EffectivizedFunctor& f, const StructurePresentation& a,
                        const IsoGraph& iso, const StructurePresentation& b, Stage stage);

/// Composite G . F . ... applied right to left; the empty chain is the
/// identity functor.
class FunctorChain {
 public:
  FunctorChain() = default;
  FunctorChain(const EffectivizedFunctor& f) : parts_{&f} {}  // NOLINT: implicit on purpose
  /// `outer` after `inner`.
  static FunctorChain then(const FunctorChain& inner, const FunctorChain& outer);

  bool identity() const noexcept { return parts_.empty(); }
  std::string name() const;
  StructurePresentation apply_object(const StructurePresentation& s, Stage stage) const;
  IsoGraph apply_morphism(const StructurePresentation& a, const IsoGraph& iso,
                          const StructurePresentation& b, Stage stage) const;

 private:
  std::vector<const EffectivizedFunctor*> parts_;  // applied first to last
};

/// Natural-transformation component Lambda^A read off D(A) or P(A).
struct IsoWitness {
  std::string name;
  OperatorPart op;
  DiagramFormat format = DiagramFormat::atomic;
};

/// Graph of Lambda^A on [0, domain). Throws WitnessMalformed unless the
/// output is a bijection of [0, domain) onto [0, codomain).
IsoGraph run_witness(const IsoWitness& w, const StructurePresentation& a, Code domain,
                     Code codomain, Stage stage);

// ---------------------------------------------------------------------------
// Reports. Violations are data; every entry names the sample and element.

struct Violation {
  std::size_t sample = 0;
  std::string check;
  std::optional<Code> element;
  std::string expected;
  std::string actual;
};

struct CheckReport {
  std::size_t samples = 0;
  std::size_t checks = 0;
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
  void append(const CheckReport& other, const std::string& prefix);
};

/// (a, f, b = f(a), g, c = g(b)).
struct LawSample {
  StructurePresentation a;
  IsoGraph f;
  StructurePresentation b;
  IsoGraph g;
  StructurePresentation c;
};

LawSample make_law_sample(const StructurePresentation& a, const IsoGraph& f, const IsoGraph& g);

CheckReport check_functor_laws(const FunctorChain& f, const std::vector<LawSample>& samples,
                               Stage stage);

/// (a, h, b = h(a)).
struct IsoSample {
  StructurePresentation a;
  IsoGraph h;
  StructurePresentation b;
};

IsoSample make_iso_sample(const StructurePresentation& a, const IsoGraph& h);

/// Lambda^B . F(h) = G(h) . Lambda^A on the window of F(A).
CheckReport check_effective_isomorphism(const FunctorChain& f, const FunctorChain& g,
                                        const IsoWitness& lambda,
                                        const std::vector<IsoSample>& samples, Stage stage);

/// Lambda_C^A : A -> GF(A) and Lambda_D^B : B -> FG(B). Checks both
/// isomorphisms of functors and the compatibility equations
/// Lambda_D^{F(A)} = F(Lambda_C^A) and Lambda_C^{G(B)} = G(Lambda_D^B).
CheckReport check_pseudo_inverse(const EffectivizedFunctor& f, const EffectivizedFunctor& g,
                                 const IsoWitness& lambda_c, const IsoWitness& lambda_d,
                                 const std::vector<IsoSample>& samples_c,
                                 const std::vector<IsoSample>& samples_d, Stage stage);

std::string describe(const IsoGraph& g);

}  // namespace efunc
