#include <doctest.h>

#include "efunc/errors.hpp"
#include "efunc/machines.hpp"

using namespace efunc;

TEST_CASE("enumeration operator firing") {
  const EnumOperator unconditional({EnumAxiom{{}, 5, 2}});
  CHECK(apply_enum_operator(unconditional, CodeSet{}, 2) == CodeSet{5});
  CHECK(apply_enum_operator(unconditional, CodeSet{99}, 7) == CodeSet{5});
  CHECK(apply_enum_operator(unconditional, CodeSet{}, 1).empty());

  const EnumOperator op({EnumAxiom{{2, 4}, 7, 0}});
  CHECK(apply_enum_operator(op, CodeSet{2, 4, 9}, 0) == CodeSet{7});
  CHECK(apply_enum_operator(op, CodeSet{2, 9}, 0).empty());
}

TEST_CASE("enumeration oracle stages") {
  EnumOracle o;
  o.add(2, 0);
  o.add(4, 3);
  o.add(4, 5);
  const EnumOperator op({EnumAxiom{{2, 4}, 7, 0}});
  CHECK(apply_enum_operator(op, o, 2).empty());
  CHECK(apply_enum_operator(op, o, 3) == CodeSet{7});
  CHECK(o.last_stage() == 3);
}

TEST_CASE("listing is ordered by stage") {
  const EnumOperator op({EnumAxiom{{}, 1, 4}, EnumAxiom{{}, 2, 0}, EnumAxiom{{}, 3, 4}});
  CHECK(op.axioms()[0].conclusion == 2);
  CHECK(op.available(3).size() == 1);
  CHECK(op.available(4).size() == 3);
  CHECK(op.last_stage() == 4);
  CHECK(check_listing(op).empty());
}

TEST_CASE("find_witness returns a premise inside the snapshot") {
  const EnumOperator op({EnumAxiom{{1, 2}, 9, 0}, EnumAxiom{{3}, 9, 0}});
  const auto w = find_witness(op, CodeSet{3, 4}, 0, 9);
  REQUIRE(w);
  CHECK(w->premise == CodeSet{3});
  CHECK_FALSE(find_witness(op, CodeSet{1}, 0, 9));
}

TEST_CASE("turing functional evaluation") {
  const TuringFunctional phi({QueryAxiom{{{10, true}}, 4, 1, 0}});
  CHECK(apply_turing_functional(phi, TotalOracle({10}, 16), 4, 0) == Code{1});
  CHECK_FALSE(apply_turing_functional(phi, TotalOracle({}, 16), 4, 0));
  CHECK_FALSE(apply_turing_functional(phi, TotalOracle({10}, 16), 3, 0));
}

TEST_CASE("inconsistent functional") {
  const TuringFunctional phi(
      {QueryAxiom{{{3, true}}, 5, 1, 0}, QueryAxiom{{{3, true}}, 5, 0, 0}});
  CHECK(phi.find_inconsistency());
  CHECK_THROWS_AS(phi.validate(), FunctionalInconsistency);
  CHECK_THROWS_AS(apply_turing_functional(phi, TotalOracle({3}, 8), 5, 0),
                  FunctionalInconsistency);
}

TEST_CASE("disjoint queries are consistent") {
  const TuringFunctional phi(
      {QueryAxiom{{{3, true}}, 5, 1, 0}, QueryAxiom{{{3, false}}, 5, 0, 0}});
  CHECK_FALSE(phi.find_inconsistency());
  CHECK(apply_turing_functional(phi, TotalOracle({3}, 8), 5, 0) == Code{1});
  CHECK(apply_turing_functional(phi, TotalOracle({}, 8), 5, 0) == Code{0});
}

TEST_CASE("queries outside the oracle window") {
  const TuringFunctional phi({QueryAxiom{{{30, true}}, 0, 1, 0}});
  CHECK_THROWS_AS(apply_turing_functional(phi, TotalOracle({}, 8), 0, 0), InsufficientOracle);
}

TEST_CASE("stage gates functional axioms") {
  const TuringFunctional phi({QueryAxiom{{}, 0, 6, 3}});
  CHECK_FALSE(apply_turing_functional(phi, TotalOracle({}, 1), 0, 2));
  CHECK(apply_turing_functional(phi, TotalOracle({}, 1), 0, 3) == Code{6});
}

TEST_CASE("shape-aware compatibility") {
  // 10 and 11 are an atom and its dual: both 1 cannot occur in a diagram.
  const QueryMap a{{10, true}}, b{{11, true}};
  CHECK(compatible(a, b, OracleShape::plain));
  CHECK_FALSE(compatible(a, b, OracleShape::atomic_diagram));
  CHECK_FALSE(realizable({{10, false}, {11, false}}, OracleShape::atomic_diagram));

  // Graph column: f(0)=0 and f(0)=1 together are not a function.
  const QueryMap g0{{join_code(cantor_pair(0, 0), 1, 3), true}};
  const QueryMap g1{{join_code(cantor_pair(0, 1), 1, 3), true}};
  CHECK(compatible(g0, g1, OracleShape::plain));
  CHECK_FALSE(compatible(g0, g1, OracleShape::atomic_join));

  for (auto s : {OracleShape::plain, OracleShape::atomic_diagram, OracleShape::positive_diagram,
                 OracleShape::atomic_join, OracleShape::positive_join})
    CHECK(shape_from_string(to_string(s)) == s);
  CHECK_FALSE(shape_from_string("triangle"));
}

TEST_CASE("positive diagram shape fixes equality codes") {
  // 3*pair(0,0) is 0 = 0, always 1; 3*pair(0,0)+1 is 0 != 0, always 0.
  CHECK_FALSE(realizable({{0, false}}, OracleShape::positive_diagram));
  CHECK_FALSE(realizable({{1, true}}, OracleShape::positive_diagram));
  CHECK(realizable({{2, true}}, OracleShape::positive_diagram));
}

TEST_CASE("monotone compact check") {
  const EnumOperator op({EnumAxiom{{1}, 5, 0}, EnumAxiom{{2, 3}, 6, 2}});
  CHECK(check_monotone_compact(op, {1, 2}, {1, 2, 3}, 0, 4).empty());
}

TEST_CASE("oracle view records use") {
  const TotalOracle o({1, 4}, 8);
  OracleView v(o);
  CHECK(v.query(4));
  CHECK_FALSE(v.query(2));
  CHECK(v.use() == QueryMap{{2, false}, {4, true}});
  CHECK_THROWS_AS(v.query(9), InsufficientOracle);
}

TEST_CASE("total oracle covering") {
  const TotalOracle o = TotalOracle::covering({3, 17}, 4);
  CHECK(o.window() == 18);
  CHECK(o.bit(17) == true);
  CHECK(o.bit(16) == false);
  CHECK_FALSE(o.bit(18));
}
