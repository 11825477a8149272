#include <doctest.h>

#include <sstream>

#include "efunc/diagram_io.hpp"
#include "efunc/errors.hpp"
#include "efunc/functor_io.hpp"
#include "efunc/gallery.hpp"

using namespace efunc;

namespace {

template <class F>
void fails_at(F&& parse, const std::string& text, std::size_t line, std::size_t column) {
  std::istringstream in(text);
  try {
    parse(in);
  } catch (const ParseError& e) {
    CHECK(e.line() == line);
    CHECK(e.column() == column);
    return;
  }
  FAIL("no parse error for: " << text);
}

auto structure = [](std::istream& in) { return parse_structure(in); };
auto enumeration = [](std::istream& in) { return parse_enumeration(in); };
auto schedule = [](std::istream& in) { return parse_schedule(in); };
auto bundle = [](std::istream& in) { return parse_bundle(in); };

}  // namespace

TEST_CASE("structure file") {
  std::istringstream in(
      "# two elements\nlanguage: 2 1\nuniverse 2\nfact 0 (0,1) @3\nfact 1 (1)\n");
  const StructurePresentation s = parse_structure(in);
  CHECK(s.language().arities == std::vector<std::size_t>{2, 1});
  CHECK(s.universe() == 2);
  CHECK_FALSE(s.total());
  CHECK(s.facts().at({0, {0, 1}}) == 3);
  CHECK(s.holds({1, {1}}, 0));
}

TEST_CASE("structure round trip") {
  const StructurePresentation s =
      build_successor(SuccessorFlavor::with_k, CESchedule({{1, 0}, {3, 2}}), 5);
  std::ostringstream out;
  write_structure(out, s, {"successor"});
  std::istringstream in(out.str());
  const StructurePresentation back = parse_structure(in);
  CHECK(back.total());
  CHECK(back.facts() == s.facts());
  CHECK(back.negative_facts() == s.negative_facts());
}

TEST_CASE("structure file errors") {
  fails_at(structure, "fact 0 (0,1)\n", 1, 1);
  fails_at(structure, "language: 2\nuniverse 2\nfact 1 (0,1)\n", 3, 6);
  fails_at(structure, "language: 2\nuniverse 2\nfact 0 (0,5)\n", 3, 11);
  fails_at(structure, "language: 2\nuniverse 2\nfact 0 (0)\n", 3, 6);
  fails_at(structure, "language: 2 0\n", 1, 13);
  fails_at(structure, "language: 2\nuniverse 2\nfacts 0 (0,1)\n", 3, 5);
}

TEST_CASE("enumeration file") {
  std::istringstream in("0 -> 3\n1 -> 3\n2 -> 0\npartial\n");
  const Enumeration f = parse_enumeration(in);
  CHECK(f.values == std::vector<Code>{3, 3, 0});
  CHECK(f.partial);
  std::ostringstream out;
  write_enumeration(out, f);
  std::istringstream again(out.str());
  CHECK(parse_enumeration(again) == f);

  fails_at(enumeration, "0 -> 1\n0 -> 2\n", 2, 1);
  std::istringstream gap("0 -> 1\n2 -> 2\n");
  CHECK_THROWS_AS(parse_enumeration(gap), ParseError);
}

TEST_CASE("schedule file") {
  std::istringstream in("# K\n1 @0\n3 @2\n");
  const CESchedule k = parse_schedule(in);
  CHECK(k.entries() == std::vector<std::pair<Code, Stage>>{{1, 0}, {3, 2}});
  std::ostringstream out;
  write_schedule(out, k);
  std::istringstream again(out.str());
  CHECK(parse_schedule(again).entries() == k.entries());
  fails_at(schedule, "1 @0\n1 @4\n", 2, 1);
  fails_at(schedule, "1 0\n", 1, 3);
}

TEST_CASE("functor bundle") {
  std::istringstream in(
      "kind star-enumerable\nfrom: 2\nobject\nenum {0} -> 0\nmorphism\nshape atomic-join\n"
      "turing [1:1] 0 -> 0\n");
  const FunctorBundle b = parse_bundle(in);
  CHECK(b.kind == FunctorKind::star_enumerable);
  CHECK(b.to == b.from);
  const EffectivizedFunctor f = b.functor("f");
  CHECK(std::holds_alternative<EnumOperator>(f.object()));
  REQUIRE(std::holds_alternative<TuringFunctional>(f.morphism()));
  CHECK(std::get<TuringFunctional>(f.morphism()).shape() == OracleShape::atomic_join);

  std::ostringstream out;
  write_bundle(out, b);
  std::istringstream again(out.str());
  const FunctorBundle back = parse_bundle(again);
  CHECK(back.kind == b.kind);
  CHECK(back.object.enum_axioms == b.object.enum_axioms);
  CHECK(back.morphism.query_axioms == b.morphism.query_axioms);
}

TEST_CASE("bundle species must match the kind") {
  std::istringstream in("kind computable\nfrom: 2\nobject\nenum {0} -> 0\nmorphism\n");
  const FunctorBundle b = parse_bundle(in);
  CHECK_THROWS_AS(b.functor("f"), KindError);
}

TEST_CASE("bundle errors") {
  fails_at(bundle, "kind sideways\n", 1, 6);
  fails_at(bundle, "kind enumerable\nfrom: 1\nenum {} -> 0\n", 3, 1);
  fails_at(bundle, "kind enumerable\nfrom: 1\nobject\nshape round\n", 4, 7);
  std::istringstream missing("from: 1\nobject\n");
  CHECK_THROWS_AS(parse_bundle(missing), ParseError);
}

TEST_CASE("missing files") {
  CHECK_THROWS_AS(load_structure("/nonexistent/s.txt"), ConfigError);
  CHECK_THROWS_AS(load_bundle("/nonexistent/f.txt"), ConfigError);
}
