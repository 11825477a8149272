#include "efunc/text_format.hpp"

#include <fstream>
#include <sstream>

#include "cursor.hpp"
#include "efunc/errors.hpp"

namespace efunc {

namespace {

Stage parse_stage(detail::Cursor& cur) {
  if (cur.consume('@')) return cur.number();
  return 0;
}

}  // namespace

bool parse_axiom_line(detail::Cursor& cur, OperatorFile& out) {
  if (cur.consume("enum")) {
    EnumAxiom ax;
    cur.expect('{');
    if (!cur.consume('}')) {
      do {
        ax.premise.insert(cur.number());
      } while (cur.consume(','));
      cur.expect('}');
    }
    cur.expect("->");
    ax.conclusion = cur.number();
    ax.stage = parse_stage(cur);
    cur.expect_end();
    out.enum_axioms.push_back(std::move(ax));
    return true;
  }
  if (cur.consume("turing")) {
    QueryAxiom ax;
    cur.expect('[');
    if (!cur.consume(']')) {
      do {
        const std::size_t at = cur.mark();
        const Code pos = cur.number();
        cur.expect(':');
        const std::size_t value_at = cur.mark();
        const Code bit = cur.number();
        if (bit > 1) cur.fail_at(value_at, "query value must be 0 or 1");
        auto [it, inserted] = ax.queries.emplace(pos, bit == 1);
        if (!inserted && it->second != (bit == 1))
          cur.fail_at(at, "position queried with two values");
      } while (cur.consume(','));
      cur.expect(']');
    }
    ax.input = cur.number();
    cur.expect("->");
    ax.output = cur.number();
    ax.stage = parse_stage(cur);
    cur.expect_end();
    out.query_axioms.push_back(std::move(ax));
    return true;
  }
  return false;
}

OperatorFile parse_operators(std::istream& in, const std::string& source) {
  OperatorFile file;
  detail::for_each_line(in, source, [&](detail::Cursor& cur) {
    if (parse_axiom_line(cur, file)) return;
    if (cur.consume("shape")) {
      const std::size_t at = cur.mark();
      const std::string name = cur.word();
      auto shape = shape_from_string(name);
      if (!shape) cur.fail_at(at, "unknown oracle shape '" + name + "'");
      file.shape = *shape;
      cur.expect_end();
      return;
    }
    cur.fail("expected 'enum', 'turing' or 'shape'");
  });
  return file;
}

OperatorFile parse_operators_string(const std::string& text, const std::string& source) {
  std::istringstream in(text);
  return parse_operators(in, source);
}

OperatorFile load_operators(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open operator file '" + path + "'");
  return parse_operators(in, path);
}

std::string format_axiom(const EnumAxiom& ax) {
  std::ostringstream out;
  out << "enum {";
  bool first = true;
  for (Code c : ax.premise) {
    if (!first) out << ',';
    out << c;
    first = false;
  }
  out << "} -> " << ax.conclusion << " @" << ax.stage;
  return out.str();
}

std::string format_axiom(const QueryAxiom& ax) {
  std::ostringstream out;
  out << "turing [";
  bool first = true;
  for (const auto& [pos, bit] : ax.queries) {
    if (!first) out << ", ";
    out << pos << ':' << (bit ? 1 : 0);
    first = false;
  }
  out << "] " << ax.input << " -> " << ax.output << " @" << ax.stage;
  return out.str();
}

void write_operator(std::ostream& out, const EnumOperator& op,
                    const std::vector<std::string>& header) {
  for (const auto& line : header) out << "# " << line << '\n';
  for (const auto& ax : op.axioms()) out << format_axiom(ax) << '\n';
}

void write_operator(std::ostream& out, const TuringFunctional& phi,
                    const std::vector<std::string>& header) {
  for (const auto& line : header) out << "# " << line << '\n';
  if (phi.shape() != OracleShape::plain) out << "shape " << to_string(phi.shape()) << '\n';
  for (const auto& ax : phi.axioms()) out << format_axiom(ax) << '\n';
}

}  // namespace efunc
