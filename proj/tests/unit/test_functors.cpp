#include <doctest.h>

#include <algorithm>

#include "efunc/errors.hpp"
#include "efunc/functors.hpp"
#include "efunc/gallery.hpp"
#include "efunc/spectrum.hpp"
#include "../support/generators.hpp"

using namespace efunc;

namespace {

const RelationalLanguage kE{{2}};

StreamOperator verbatim() {
  return StreamOperator{"verbatim", [](const CodeSet& s, Stage) { return s; },
                        [](const CodeSet& s, Stage, Code c) -> std::optional<CodeSet> {
                          if (!s.contains(c)) return std::nullopt;
                          return CodeSet{c};
                        }};
}

EffectivizedFunctor identity_functor(Code window) {
  return EffectivizedFunctor("id", FunctorKind::positive_enumerable, kE, kE, verbatim(),
                             identity_morphism_operator(window));
}

// Graph output with the values at 0 and 1 exchanged.
EnumOperator swapped_identity(Code window) {
  std::vector<EnumAxiom> axioms;
  for (Code x = 0; x < window; ++x) {
    const Code y = x == 0 ? 1 : x == 1 ? 0 : x;
    axioms.push_back(EnumAxiom{{positive_eq_code(x, x)}, cantor_pair(x, y), 0});
  }
  return EnumOperator(std::move(axioms));
}

std::vector<LawSample> law_samples(const StructurePresentation& a, std::uint64_t seed,
                                   std::size_t count) {
  Rng rng(seed);
  std::vector<LawSample> out;
  for (std::size_t i = 0; i < count; ++i)
    out.push_back(make_law_sample(a, random_permutation(rng, a.universe()),
                                  random_permutation(rng, a.universe())));
  return out;
}

std::vector<IsoSample> iso_samples(const StructurePresentation& a, std::uint64_t seed,
                                   std::size_t count) {
  Rng rng(seed);
  std::vector<IsoSample> out;
  for (std::size_t i = 0; i < count; ++i)
    out.push_back(make_iso_sample(a, random_permutation(rng, a.universe())));
  return out;
}

bool has_check(const CheckReport& r, const std::string& prefix) {
  return std::any_of(r.violations.begin(), r.violations.end(),
                     [&](const Violation& v) { return v.check.starts_with(prefix); });
}

const CESchedule kSchedule({{1, 0}, {3, 2}});

}  // namespace

TEST_CASE("kind names and formats") {
  for (auto k : {FunctorKind::computable, FunctorKind::enumerable, FunctorKind::star_enumerable,
                 FunctorKind::positive_enumerable, FunctorKind::positive_star_enumerable})
    CHECK(kind_from_string(to_string(k)) == k);
  CHECK(format_of(FunctorKind::enumerable) == DiagramFormat::atomic);
  CHECK(format_of(FunctorKind::positive_star_enumerable) == DiagramFormat::positive);
}

TEST_CASE("kind discipline") {
  const TuringFunctional phi;
  const EnumOperator psi;
  CHECK_THROWS_AS(EffectivizedFunctor("x", FunctorKind::positive_enumerable, kE, kE, phi, psi),
                  KindError);
  CHECK_THROWS_AS(EffectivizedFunctor("x", FunctorKind::enumerable, kE, kE, psi, phi), KindError);
  CHECK_THROWS_AS(EffectivizedFunctor("x", FunctorKind::computable, kE, kE, phi, psi), KindError);
  CHECK_THROWS_AS(EffectivizedFunctor("x", FunctorKind::star_enumerable, kE, kE, psi, psi),
                  KindError);
  CHECK_NOTHROW(EffectivizedFunctor("x", FunctorKind::star_enumerable, kE, kE, psi, phi));
  CHECK_NOTHROW(EffectivizedFunctor("x", FunctorKind::computable, kE, kE, phi, phi));
}

TEST_CASE("identity functor") {
  Rng rng(5);
  const StructurePresentation a = gen::random_partial_structure(rng, kE, 4, 0);
  const EffectivizedFunctor id = identity_functor(4);
  CHECK(positive_diagram(apply_object(id, a, 0), 0) == positive_diagram(a, 0));
  CHECK(apply_morphism(id, a, identity_graph(4), a, 0) == identity_graph(4));
  CHECK(apply_object(id, StructurePresentation(kE, 4), 0).facts().empty());
  CHECK(check_functor_laws(id, law_samples(a, 1, 5), 0).ok());
}

TEST_CASE("functor chains") {
  const FunctorChain id;
  CHECK(id.identity());
  Rng rng(9);
  const StructurePresentation a = gen::random_partial_structure(rng, kE, 3, 0);
  CHECK(id.apply_object(a, 0).same_at(a, 0));
  const IsoGraph h = random_permutation(rng, 3);
  CHECK(id.apply_morphism(a, h, transport(a, h), 0) == h);
}

TEST_CASE("flip on objects and morphisms") {
  const Code w = 6;
  const EffectivizedFunctor flip = functor_flip(w);
  const StructurePresentation a = build_successor(SuccessorFlavor::with_k, kSchedule, w);
  const StructurePresentation b = build_successor(SuccessorFlavor::with_k_bar, kSchedule, w);
  CHECK(atomic_diagram(apply_object(flip, a, kAllStages), kAllStages) ==
        atomic_diagram(b, kAllStages));
  Rng rng(2);
  for (int i = 0; i < 5; ++i) {
    const IsoGraph h = random_permutation(rng, w);
    CHECK(apply_morphism(flip, a, h, transport(a, h), kAllStages) == h);
  }
  CHECK(check_functor_laws(flip, law_samples(a, 3, 5), kAllStages).ok());
  CHECK_THROWS_AS(apply_object(flip, StructurePresentation(a.language(), w, false), 0),
                  TotalityError);
}

TEST_CASE("corrupted morphism part breaks the laws") {
  const EffectivizedFunctor drop = functor_drop_K(6);
  const EffectivizedFunctor bad = drop.with_morphism(swapped_identity(6));
  const StructurePresentation a = build_successor(SuccessorFlavor::with_k, kSchedule, 6);
  const CheckReport r = check_functor_laws(bad, law_samples(a, 4, 5), kAllStages);
  CHECK_FALSE(r.ok());
  CHECK(has_check(r, "identity"));
  CHECK(r.violations.front().element.has_value());
}

TEST_CASE("apply_morphism rejects non-injective output") {
  std::vector<EnumAxiom> axioms;
  for (Code x = 0; x < 3; ++x) axioms.push_back(EnumAxiom{{}, cantor_pair(x, 0), 0});
  const EffectivizedFunctor f = identity_functor(3).with_morphism(EnumOperator(axioms));
  const StructurePresentation a(kE, 3);
  CHECK_THROWS_AS(apply_morphism(f, a, identity_graph(3), a, 0), IllFormedFunctor);
}

TEST_CASE("apply_object rejects non-diagram output") {
  const StreamOperator junk{"junk", [](const CodeSet&, Stage) { return CodeSet{3 * 99 + 2}; },
                            [](const CodeSet&, Stage, Code) { return std::optional<CodeSet>{}; }};
  const EffectivizedFunctor f("junk", FunctorKind::positive_enumerable, kE, kE, junk,
                              identity_morphism_operator(2));
  CHECK_THROWS_AS(apply_object(f, StructurePresentation(kE, 2), 0), IllFormedFunctor);
}

TEST_CASE("witnesses") {
  const StructurePresentation a(kE, 3);
  CHECK(run_witness(identity_witness_enum(3), a, 3, 3, 0) == identity_graph(3));
  CHECK(run_witness(identity_witness_turing(3, DiagramFormat::positive), a, 3, 3, 0) ==
        identity_graph(3));
  CHECK_THROWS_AS(run_witness(identity_witness_enum(2), a, 3, 3, 0), WitnessMalformed);
  const IsoWitness collapse{"collapse", EnumOperator({EnumAxiom{{}, cantor_pair(0, 0), 0},
                                                      EnumAxiom{{}, cantor_pair(1, 0), 0}}),
                            DiagramFormat::positive};
  CHECK_THROWS_AS(run_witness(collapse, StructurePresentation(kE, 2), 2, 2, 0), WitnessMalformed);
}

TEST_CASE("effective isomorphism") {
  const EffectivizedFunctor id = identity_functor(5);
  Rng rng(8);
  const StructurePresentation a = gen::random_partial_structure(rng, kE, 5, 0);
  CHECK(check_effective_isomorphism(id, id, identity_witness_enum(5), iso_samples(a, 6, 5), 0)
            .ok());

  const Code w = 8;
  const EffectivizedFunctor drop = functor_drop_K(w);
  const EffectivizedFunctor add = functor_add_K(kSchedule, w);
  const StructurePresentation k = build_successor(SuccessorFlavor::with_k, kSchedule, w);
  const FunctorChain gf = FunctorChain::then(drop, add);
  CHECK(check_effective_isomorphism(FunctorChain{}, gf, identity_witness_enum(w),
                                    iso_samples(k, 7, 5), kAllStages)
            .ok());

  const IsoWitness swapped{"swapped", swapped_identity(5), DiagramFormat::positive};
  const CheckReport bad = check_effective_isomorphism(id, id, swapped, iso_samples(a, 6, 5), 0);
  CHECK_FALSE(bad.ok());
  CHECK(bad.violations.front().element.has_value());
}

TEST_CASE("pseudo-inverse checks") {
  Rng rng(12);
  const StructurePresentation a = gen::random_partial_structure(rng, kE, 4, 0);
  const EffectivizedFunctor id = identity_functor(4);
  const IsoWitness lid = identity_witness_enum(4);
  CHECK(check_pseudo_inverse(id, id, lid, lid, iso_samples(a, 1, 4), iso_samples(a, 2, 4), 0).ok());

  const Code w = 10;
  const EffectivizedFunctor drop = functor_drop_K(w);
  const EffectivizedFunctor add = functor_add_K(kSchedule, w);
  const StructurePresentation k = build_successor(SuccessorFlavor::with_k, kSchedule, w);
  const StructurePresentation plain = build_successor(SuccessorFlavor::plain, kSchedule, w);
  const IsoWitness lw = identity_witness_enum(w);
  CHECK(check_pseudo_inverse(drop, add, lw, lw, iso_samples(k, 3, 4), iso_samples(plain, 4, 4),
                             kAllStages)
            .ok());

  const IsoWitness corrupted{"corrupted", swapped_identity(w), DiagramFormat::positive};
  const CheckReport r = check_pseudo_inverse(drop, add, lw, corrupted, iso_samples(k, 3, 4),
                                             iso_samples(plain, 4, 4), kAllStages);
  CHECK_FALSE(r.ok());
  CHECK(has_check(r, "compatibility:F(Lambda_C)"));
}

TEST_CASE("describe") { CHECK(describe(IsoGraph{{0, 1}, {1, 0}}) == "{0->1, 1->0}"); }
