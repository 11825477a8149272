#include <doctest.h>

#include "efunc/errors.hpp"
#include "efunc/gallery.hpp"
#include "../support/generators.hpp"
#include "../support/oracles.hpp"

using namespace efunc;

namespace {

// F(h) carries F(A) onto F(B).
void check_transport(const EffectivizedFunctor& f, const StructurePresentation& a,
                     const IsoGraph& h, Stage stage) {
  const StructurePresentation b = transport(a, h);
  const StructurePresentation fa = apply_object(f, a, stage);
  const StructurePresentation fb = apply_object(f, b, stage);
  const IsoGraph fh = apply_morphism(f, a, h, b, stage);
  REQUIRE(is_bijection_on(fh, fa.universe()));
  REQUIRE(diagram(transport(fa, fh), stage, f.format()) == diagram(fb, stage, f.format()));
  REQUIRE_FALSE(oracle::isomorphisms(oracle::model_of(fa, stage), oracle::model_of(fb, stage), 1).empty());
}

}  // namespace

TEST_CASE("successor functors send isomorphic inputs to isomorphic outputs") {
  Rng rng(51);
  for (int i = 0; i < 40; ++i) {
    const CESchedule k = gen::random_schedule(rng, 8, 3, 5);
    const Code w = 3 + rng.below(6);
    const IsoGraph h = gen::random_permutation(rng, w);
    const auto with_k = build_successor(SuccessorFlavor::with_k, k, w);
    check_transport(functor_flip(w), with_k, h, kAllStages);
    check_transport(functor_drop_K(w), with_k, h, kAllStages);
    check_transport(functor_add_K(k, w), build_successor(SuccessorFlavor::plain, k, w), h, kAllStages);
  }
}

TEST_CASE("parity sends relocated cycle graphs to isomorphic outputs") {
  Rng rng(52);
  for (int i = 0; i < 20; ++i) {
    const CESchedule k = gen::random_schedule(rng, 4, 2, 4);
    const Code cycles = 2 + rng.below(2);
    const Code gadgets = 1 + rng.below(4);
    const auto parity = functor_parity(k, gadgets);
    const std::optional<Code> from = rng.below(cycles);
    const std::optional<Code> to = rng.below(cycles);
    const auto a = build_cycle_graph(k, cycles, kAllStages, from);
    const auto b = build_cycle_graph(k, cycles, kAllStages, to);
    const IsoGraph h = compose(cycle_relocation(cycles, to), inverse(cycle_relocation(cycles, from)));
    REQUIRE(transport(a, h).facts() == b.facts());
    const auto fa = apply_object(parity, a, kAllStages);
    const auto fb = apply_object(parity, b, kAllStages);
    const IsoGraph fh = apply_morphism(parity, a, h, b, kAllStages);
    REQUIRE(positive_diagram(transport(fa, fh), kAllStages) == positive_diagram(fb, kAllStages));
    const auto isos = oracle::isomorphisms(oracle::model_of(fa, kAllStages),
                                           oracle::model_of(fb, kAllStages), 2);
    REQUIRE(isos.size() == 1);
    for (Code x = 0; x < fa.universe(); ++x) REQUIRE(isos.front()[x] == fh.at(x));
  }
}

TEST_CASE("positive object parts grow with the stage") {
  Rng rng(53);
  for (int i = 0; i < 30; ++i) {
    const CESchedule k = gen::random_schedule(rng, 8, 4, 6);
    const Code w = 3 + rng.below(6);
    const auto add = functor_add_K(k, w);
    const auto plain = build_successor(SuccessorFlavor::plain, k, w);
    const auto with_k = build_successor(SuccessorFlavor::with_k, k, w);
    for (Stage s = 0; s < 8; ++s) {
      const CodeSet a = positive_diagram(apply_object(add, plain, s), s);
      const CodeSet b = positive_diagram(apply_object(add, plain, s + 1), s + 1);
      REQUIRE(std::includes(b.begin(), b.end(), a.begin(), a.end()));
      const CodeSet c = positive_diagram(apply_object(functor_drop_K(w), with_k, s), s);
      const CodeSet d = positive_diagram(apply_object(functor_drop_K(w), with_k, s + 1), s + 1);
      REQUIRE(std::includes(d.begin(), d.end(), c.begin(), c.end()));
    }
  }
}

TEST_CASE("cycle graph edges at a") {
  Rng rng(54);
  for (int i = 0; i < 50; ++i) {
    const CESchedule k = gen::random_schedule(rng, 8, 4, 6);
    const Code w = 1 + rng.below(7);
    const Stage s = rng.below(8);
    const auto m = oracle::model_of(build_cycle_graph(k, w, s), s);
    std::size_t expected = 0;
    for (auto [x, st] : k.entries())
      if (x < w && st <= s) ++expected;
    std::size_t degree = 0;
    for (const auto& [r, t] : m.facts) {
      REQUIRE(m.holds(0, {t[1], t[0]}));
      if (t[0] == 0 && t[1] != 0) ++degree;
    }
    REQUIRE(degree == expected);
    REQUIRE(m.facts.size() == 1 + 2 * expected + [&] {
      std::size_t edges = 0;
      for (Code n = 0; n < w; ++n) edges += 2 * (n + 3);
      return edges;
    }());
  }
}

TEST_CASE("unique isomorphism matches brute force") {
  Rng rng(55);
  for (int i = 0; i < 10; ++i) {
    const CESchedule k = gen::random_schedule(rng, 6, 3, 5);
    const Code w = 1 + rng.below(6);
    const auto b1 = oracle::model_of(build_categoricity_graph(GadgetCopy::B1, k, w), kAllStages);
    const auto b2 = oracle::model_of(build_categoricity_graph(GadgetCopy::B2, k, w), kAllStages);
    const auto isos = oracle::isomorphisms(b1, b2, 2);
    REQUIRE(isos.size() == 1);
    const IsoGraph f = unique_isomorphism_B1_B2(k, w);
    for (Code x = 0; x < b1.n; ++x) REQUIRE(isos.front()[x] == f.at(x));
  }
}

TEST_CASE("monotonicity witnesses across schedules") {
  Rng rng(56);
  std::size_t found = 0;
  for (int i = 0; i < 20; ++i) {
    const CESchedule k = gen::random_schedule(rng, 6, 3, 8);
    const Code w = 2 + rng.below(5);
    try {
      const MonotonicityWitness m = find_monotonicity_violation(k, w);
      REQUIRE(m.verified);
      REQUIRE(k.contains(m.gadget));
      REQUIRE(m.required_at_x != m.required_at_y);
      REQUIRE(std::includes(m.y_oracle.begin(), m.y_oracle.end(), m.x_oracle.begin(), m.x_oracle.end()));
      ++found;
    } catch (const SearchExhausted&) {
      bool any = false;
      for (auto [x, st] : k.entries()) any = any || x < w;
      REQUIRE_FALSE(any);
    }
  }
  CHECK(found >= 5);
}
