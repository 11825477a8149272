#include <doctest.h>

#include "efunc/equivalence.hpp"
#include "efunc/errors.hpp"
#include "efunc/transforms.hpp"
#include "../support/oracles.hpp"

using namespace efunc;

namespace {

const RelationalLanguage kE{{2}};

Code graph_pos(Code u, Code v) { return join_code(cantor_pair(u, v), 1, 3); }

StructurePresentation edge_structure(Code n, std::vector<std::pair<Code, Code>> edges) {
  std::vector<Atom> yes;
  for (auto [x, y] : edges) yes.push_back({0, {x, y}});
  return total_structure(kE, n, yes);
}

}  // namespace

TEST_CASE("alpha strings") {
  const AlphaString a = alpha_string({10}, kE);
  REQUIRE(a.size() == 12);
  CHECK(a.at(10) == true);
  CHECK(a.at(11) == false);
  for (Code x = 0; x < 10; ++x) CHECK_FALSE(a.at(x));
  CHECK(a.totalized == std::vector<bool>{0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0});
  CHECK(a.values == oracle::alpha({10}));

  CHECK(alpha_string({}, kE).size() == 0);

  const AlphaString b = alpha_string({1}, kE);
  CHECK(b.size() == 2);
  CHECK(b.at(1) == true);
  CHECK(b.at(0) == false);

  CHECK_THROWS_AS(alpha_string({10, 11}, kE), InconsistentDiagram);
}

TEST_CASE("diagram premise") {
  CHECK(diagram_premise({{10, true}, {13, false}}) == CodeSet{10, 12});
  CHECK_FALSE(diagram_premise({{10, true}, {11, true}}));
}

TEST_CASE("turing_to_enum_diagram examples") {
  const TuringFunctional pos({QueryAxiom{{{10, true}}, 4, 1, 0}}, OracleShape::atomic_diagram);
  const EnumOperator psi = turing_to_enum_diagram(pos, kE, 128);
  REQUIRE(psi.size() == 1);
  CHECK(psi.axioms()[0].premise == CodeSet{10});
  CHECK(psi.axioms()[0].conclusion == 4);
  CHECK(apply_enum_operator(psi, atomic_diagram(edge_structure(2, {{0, 1}}), 0), 0) ==
        CodeSet{4});

  const TuringFunctional neg({QueryAxiom{{{10, false}}, 4, 1, 0}}, OracleShape::atomic_diagram);
  const EnumOperator psi2 = turing_to_enum_diagram(neg, kE, 128);
  REQUIRE(psi2.size() == 1);
  CHECK(psi2.axioms()[0].premise == CodeSet{11});

  const TuringFunctional far({QueryAxiom{{{500, true}}, 4, 1, 0}}, OracleShape::atomic_diagram);
  CHECK(turing_to_enum_diagram(far, kE, 128).empty());

  const TuringFunctional zero({QueryAxiom{{{10, true}}, 4, 0, 0}}, OracleShape::atomic_diagram);
  CHECK(turing_to_enum_diagram(zero, kE, 128).empty());
}

TEST_CASE("turing_to_enum_diagram agrees with the literal construction") {
  const TuringFunctional phi(
      {QueryAxiom{{{10, true}, {1, false}}, 4, 1, 0}, QueryAxiom{{{0, true}}, 5, 1, 0},
       QueryAxiom{{{4, false}, {10, false}}, 6, 1, 0}, QueryAxiom{{{4, true}}, 7, 0, 0}},
      OracleShape::atomic_diagram);
  const EnumOperator psi = turing_to_enum_diagram(phi, kE, 64);
  for (std::uint64_t mask = 0; mask < 16; ++mask) {
    std::vector<std::pair<Code, Code>> edges;
    const auto tuples = all_tuples(2, 2);
    for (std::size_t i = 0; i < 4; ++i)
      if ((mask >> i) & 1) edges.emplace_back(tuples[i][0], tuples[i][1]);
    const CodeSet d = atomic_diagram(edge_structure(2, edges), 0);
    CHECK(apply_enum_operator(psi, d, 0) ==
          oracle::literal_diagram_operator(phi.axioms(), d, 64, 64));
  }
}

TEST_CASE("star_to_enum unconditional axiom") {
  const TuringFunctional phi({QueryAxiom{{}, 0, 0, 0}}, OracleShape::atomic_join);
  const EnumOperator psi = star_to_enum(phi, kE, kE, 64);
  REQUIRE(psi.size() == 1);
  CHECK(psi.axioms()[0] == EnumAxiom{{}, cantor_pair(0, 0), 0});
  CHECK(apply_enum_operator(psi, CodeSet{}, 0) == CodeSet{0});
}

TEST_CASE("star_to_enum carries graph 1-entries") {
  const TuringFunctional phi({QueryAxiom{{{graph_pos(0, 0), true}}, 0, 0, 0}},
                             OracleShape::atomic_join);
  const EnumOperator psi = star_to_enum(phi, kE, kE, 64);
  REQUIRE_FALSE(psi.empty());
  for (const EnumAxiom& ax : psi.axioms()) CHECK(ax.premise.contains(graph_pos(0, 0)));
}

TEST_CASE("star_to_enum graph 0-entries pick other targets") {
  const Code bound = 64;
  const TuringFunctional phi(
      {QueryAxiom{{{graph_pos(0, 1), false}, {graph_pos(2, 3), true}}, 0, 7, 0}},
      OracleShape::atomic_join);
  const EnumOperator psi = star_to_enum(phi, kE, kE, bound);

  // Every target z with 3*pair(0,z)+1 < bound, z != 1 and z != 3.
  CodeSet expected_targets;
  for (Code z = 0; graph_pos(0, z) < bound; ++z)
    if (z != 1 && z != 3) expected_targets.insert(z);
  CodeSet targets;
  for (const EnumAxiom& ax : psi.axioms()) {
    CHECK(ax.conclusion == cantor_pair(0, 7));
    CHECK(ax.premise.contains(graph_pos(2, 3)));
    std::size_t sources_of_0 = 0;
    for (Code c : ax.premise)
      if (c % 3 == 1) {
        auto [u, v] = cantor_unpair(c / 3);
        if (u == 0) {
          ++sources_of_0;
          targets.insert(v);
        }
      }
    CHECK(sources_of_0 == 1);
  }
  CHECK(targets == expected_targets);
}

TEST_CASE("star_to_enum refuses positive shapes and bad columns") {
  const TuringFunctional positive({QueryAxiom{{}, 0, 0, 0}}, OracleShape::positive_join);
  CHECK_THROWS_AS(star_to_enum(positive, kE, kE, 64), FormatError);
  const TuringFunctional bad({QueryAxiom{{{join_code(2 * cantor_pair(3, 0), 0, 3), true}}, 0, 0, 0}},
                             OracleShape::atomic_join);
  CHECK_THROWS_AS(star_to_enum(bad, kE, kE, 64), MalformedFunctional);
}

TEST_CASE("enum_to_star examples") {
  const TuringFunctional a = enum_to_star(EnumOperator({EnumAxiom{{}, cantor_pair(3, 5), 0}}), 10);
  CHECK(apply_turing_functional(a, TotalOracle({}, 4), 3, 10) == Code{5});

  const TuringFunctional b = enum_to_star(EnumOperator({EnumAxiom{{8}, cantor_pair(0, 0), 0}}), 10);
  const Computation run = run_turing_functional(b, TotalOracle({8}, 16), 0, 10);
  CHECK(run.value == Code{0});
  CHECK(run.use == QueryMap{{8, true}});

  const TuringFunctional none = enum_to_star(EnumOperator({EnumAxiom{{}, cantor_pair(1, 1), 20}}), 10);
  CHECK_FALSE(apply_turing_functional(none, TotalOracle({}, 4), 1, 10));
}

TEST_CASE("enum_to_star surfaces conflicting conclusions") {
  const EnumOperator psi({EnumAxiom{{0}, cantor_pair(0, 0), 0}, EnumAxiom{{2}, cantor_pair(0, 1), 0}});
  CHECK_THROWS_AS(enum_to_star(psi, 10, DiagramFormat::atomic).validate(), FunctionalInconsistency);
}

TEST_CASE("enum_to_star premises that no oracle joins are compatible") {
  // f(0)=0 and f(1)=0 cannot both hold for an injective graph.
  const EnumOperator psi({EnumAxiom{{1}, cantor_pair(0, 0), 0}, EnumAxiom{{4}, cantor_pair(0, 1), 0}});
  CHECK_NOTHROW(enum_to_star(psi, 10, DiagramFormat::atomic).validate());
}

TEST_CASE("enum_to_turing_diagram examples") {
  const EnumOperator psi({EnumAxiom{{}, 10, 0}});
  const TuringFunctional phi = enum_to_turing_diagram(psi, kE, 10);
  CHECK(apply_turing_functional(phi, TotalOracle({}, 4), 10, 10) == Code{1});
  CHECK(apply_turing_functional(phi, TotalOracle({}, 4), 11, 10) == Code{0});
  CHECK(decide_atom(psi, {}, 10, 10) == Decision::yes);
  CHECK(decide_atom(psi, {}, 11, 10) == Decision::no);
  CHECK(decide_atom(EnumOperator{}, {}, 10, 10) == Decision::insufficient_budget);
  CHECK_THROWS_AS(enum_to_turing_diagram(EnumOperator({EnumAxiom{{}, 2 * cantor_pair(4, 0), 0}}), kE, 10),
                  DecodeError);
}

TEST_CASE("round trip on a small family") {
  const TuringFunctional phi({QueryAxiom{{{10, true}}, 10, 1, 0}, QueryAxiom{{{10, false}}, 11, 1, 0},
                              QueryAxiom{{{10, false}}, 10, 0, 0}, QueryAxiom{{{10, true}}, 11, 0, 0}},
                             OracleShape::atomic_diagram);
  const EnumOperator psi = turing_to_enum_diagram(phi, kE, 64);
  const TuringFunctional back = enum_to_turing_diagram(psi, kE, 10);
  Rng rng(3);
  const auto family = total_structures(kE, 2, 10, 0, rng);
  CHECK(family.size() == 16);
  const SweepStats s = compare_turing(phi, back, family, SweepSettings{}, 2);
  CHECK(s.ok());
  CHECK(s.oracles == 16);
}
