#include "efunc/functor_io.hpp"

#include <fstream>
#include <optional>

#include "cursor.hpp"
#include "efunc/errors.hpp"

namespace efunc {

namespace {

RelationalLanguage parse_language(detail::Cursor& cur) {
  cur.expect(':');
  RelationalLanguage lang;
  while (!cur.at_end()) {
    const std::size_t at = cur.mark();
    const auto a = cur.number();
    if (a == 0) cur.fail_at(at, "arity must be positive");
    lang.arities.push_back(a);
  }
  return lang;
}

OperatorPart pick(const OperatorFile& block, bool enumeration, const std::string& which,
                  FunctorKind kind) {
  if (enumeration) {
    if (!block.query_axioms.empty())
      throw KindError(to_string(kind) + " bundle: " + which + " block holds turing axioms");
    return block.enum_operator();
  }
  if (!block.enum_axioms.empty())
    throw KindError(to_string(kind) + " bundle: " + which + " block holds enum axioms");
  return block.functional();
}

}  // namespace

EffectivizedFunctor FunctorBundle::functor(const std::string& name) const {
  const bool object_enum = kind != FunctorKind::computable;
  const bool morphism_enum =
      kind == FunctorKind::enumerable || kind == FunctorKind::positive_enumerable;
  return EffectivizedFunctor(name, kind, from, to, pick(object, object_enum, "object", kind),
                             pick(morphism, morphism_enum, "morphism", kind));
}

FunctorBundle parse_bundle(std::istream& in, const std::string& source) {
  FunctorBundle b;
  std::optional<FunctorKind> kind;
  std::optional<RelationalLanguage> from;
  std::optional<RelationalLanguage> to;
  OperatorFile* block = nullptr;

  detail::for_each_line(in, source, [&](detail::Cursor& cur) {
    if (cur.consume("kind")) {
      const std::size_t at = cur.mark();
      const std::string name = cur.word();
      kind = kind_from_string(name);
      if (!kind) cur.fail_at(at, "unknown functor kind '" + name + "'");
      cur.expect_end();
      return;
    }
    if (cur.consume("from")) {
      from = parse_language(cur);
      return;
    }
    if (cur.consume("to")) {
      to = parse_language(cur);
      return;
    }
    if (cur.consume("object")) {
      cur.expect_end();
      block = &b.object;
      return;
    }
    if (cur.consume("morphism")) {
      cur.expect_end();
      block = &b.morphism;
      return;
    }
    if (!block) cur.fail("axioms must follow an 'object' or 'morphism' line");
    if (parse_axiom_line(cur, *block)) return;
    if (cur.consume("shape")) {
      const std::size_t at = cur.mark();
      const std::string name = cur.word();
      auto shape = shape_from_string(name);
      if (!shape) cur.fail_at(at, "unknown oracle shape '" + name + "'");
      block->shape = *shape;
      cur.expect_end();
      return;
    }
    cur.fail("expected an axiom, 'shape', 'object' or 'morphism'");
  });

  if (!kind) throw ParseError(source, 0, 0, "missing 'kind' line");
  if (!from) throw ParseError(source, 0, 0, "missing 'from:' line");
  b.kind = *kind;
  b.from = *from;
  b.to = to.value_or(*from);
  return b;
}

FunctorBundle load_bundle(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open bundle file '" + path + "'");
  return parse_bundle(in, path);
}

void write_bundle(std::ostream& out, const FunctorBundle& b) {
  auto lang = [&out](const char* key, const RelationalLanguage& l) {
    out << key << ':';
    for (auto a : l.arities) out << ' ' << a;
    out << '\n';
  };
  out << "kind " << to_string(b.kind) << '\n';
  lang("from", b.from);
  lang("to", b.to);
  auto block = [&out](const char* name, const OperatorFile& f) {
    out << name << '\n';
    if (f.shape && *f.shape != OracleShape::plain) out << "shape " << to_string(*f.shape) << '\n';
    for (const auto& ax : f.enum_axioms) out << format_axiom(ax) << '\n';
    for (const auto& ax : f.query_axioms) out << format_axiom(ax) << '\n';
  };
  block("object", b.object);
  block("morphism", b.morphism);
}

}  // namespace efunc
